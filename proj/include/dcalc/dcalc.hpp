#pragma once

#include "ast_json.hpp"
#include "derivative.hpp"
#include "error.hpp"
#include "expansion.hpp"
#include "faa_di_bruno.hpp"
#include "finite_calculus.hpp"
#include "oracle.hpp"
#include "parser.hpp"
#include "printer.hpp"
#include "registry.hpp"
#include "semantics.hpp"
#include "substitution.hpp"
#include "term.hpp"
#include "variable.hpp"
