#pragma once

#include <string>
#include <vector>

#include "asyncat/formula.hpp"
#include "asyncat/program.hpp"

namespace asyncat {

Program parse_program(const std::string& text);
ContractDecl parse_contract(const std::string& text);
std::vector<ContractDecl> parse_contracts(const std::string& text);
FPtr parse_formula(const std::string& text);
ExprPtr parse_expr(const std::string& text);

std::string print_stmt(const SPtr& s);
std::string print_program(const Program& p);
std::string print_contract(const ContractDecl& c);

std::string read_file(const std::string& path);

}  // namespace asyncat
