#pragma once

// lamneg: a lambda-mu calculus with first-class negation.
//
//   syntax.hpp    terms, identifiers, alpha-equivalence
//   parse.hpp     concrete syntax for terms, types, contexts
//   print.hpp     pretty printer
//   subst.hpp     the four substitution operators
//   reduce.hpp    the six reduction rules, redex enumeration, normalisation
//   parallel.hpp  parallel reduction, joinability, the diamond check
//   types.hpp     types, conclusions, unification
//   infer.hpp     principal typing, judgement checking, subject reduction
//   lmu.hpp       the name-and-context-switch fragment
//   nlm.hpp       the single-identifier-class calculus and its translation
//   gen.hpp       random well-typed term generation
//   suites.hpp    property suites with shrinking

#include "gen.hpp"
#include "infer.hpp"
#include "lmu.hpp"
#include "nlm.hpp"
#include "parallel.hpp"
#include "parse.hpp"
#include "print.hpp"
#include "reduce.hpp"
#include "subst.hpp"
#include "suites.hpp"
#include "syntax.hpp"
#include "types.hpp"
