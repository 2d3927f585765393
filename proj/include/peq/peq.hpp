#pragma once

#include "peq/c_emitter.hpp"
#include "peq/checker.hpp"
#include "peq/dataflow.hpp"
#include "peq/encoder.hpp"
#include "peq/error.hpp"
#include "peq/explore.hpp"
#include "peq/expr.hpp"
#include "peq/generator.hpp"
#include "peq/parser.hpp"
#include "peq/printer.hpp"
#include "peq/program.hpp"
#include "peq/rename.hpp"
#include "peq/report.hpp"
#include "peq/segments.hpp"
#include "peq/semantics.hpp"
#include "peq/state.hpp"
#include "peq/var.hpp"
