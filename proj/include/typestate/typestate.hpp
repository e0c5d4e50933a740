#pragma once

#include "typestate/ast.hpp"
#include "typestate/ast_check.hpp"
#include "typestate/automaton.hpp"
#include "typestate/compile.hpp"
#include "typestate/decompile.hpp"
#include "typestate/diagnostic.hpp"
#include "typestate/dot.hpp"
#include "typestate/equivalence.hpp"
#include "typestate/interchange.hpp"
#include "typestate/lexer.hpp"
#include "typestate/parser.hpp"
#include "typestate/pipeline.hpp"
#include "typestate/printer.hpp"
