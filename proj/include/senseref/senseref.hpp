#ifndef SENSEREF_SENSEREF_HPP
#define SENSEREF_SENSEREF_HPP

// Umbrella header: the whole kernel.
//
// A small dependent type theory — function types, equality types, natural
// numbers — built over an untyped transition system. Terms are programs
// (senses); the canonical forms they evaluate to are their values
// (references). Equality judgments are checked by evaluating to canonical
// form; hypothetical judgments by closed-instance validation; and on top of
// that sit identity of sense, coreference, and equipollence analyses.

#include "senseref/cli.hpp"
#include "senseref/enumerate.hpp"
#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/machine.hpp"
#include "senseref/oracle.hpp"
#include "senseref/parser.hpp"
#include "senseref/printer.hpp"
#include "senseref/semantics.hpp"
#include "senseref/sense.hpp"
#include "senseref/term.hpp"

#endif
