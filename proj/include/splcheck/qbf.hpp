// Quantified boolean formulas: an AST with smart constructors that fold
// constants, prenexing, Tseitin transformation to prenex CNF, and QDIMACS
// text in and out.
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace splcheck {

enum class Op { True, False, Var, Not, And, Or, Implies, Iff, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Op op;
    int var = 0;                  // Op::Var
    std::vector<int> bound;       // Op::Forall / Op::Exists
    std::vector<FormulaPtr> kids;
};

// Smart constructors; all of them constant-fold, f_and/f_or also flatten.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_var(int v);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(std::vector<FormulaPtr> kids);
FormulaPtr f_or(std::vector<FormulaPtr> kids);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_forall(std::vector<int> vars, FormulaPtr a);
FormulaPtr f_exists(std::vector<int> vars, FormulaPtr a);
FormulaPtr f_const(bool b);

enum class Quant { Forall, Exists };

struct QuantBlock {
    Quant q;
    std::vector<int> vars;
    bool operator==(const QuantBlock&) const = default;
};

struct QbfFormula {
    std::vector<QuantBlock> prefix;
    FormulaPtr body;
};

int max_var(const QbfFormula& f);
std::vector<int> free_vars(const QbfFormula& f);

// Replaces free variables by constants and folds. Assigning a bound variable
// is an error (std::invalid_argument).
QbfFormula substitute(const QbfFormula& f, const std::map<int, bool>& assign);

// Pulls all quantifiers into the prefix. Implication antecedents flip
// quantifiers; an iff whose operands quantify is expanded into two
// implications, with bound variables renamed fresh in the duplicated copy.
// Binding the same variable twice anywhere in the input is an error.
QbfFormula prenex(const QbfFormula& f);

struct CnfInstance {
    int num_vars = 0;
    std::vector<QuantBlock> prefix;
    std::vector<std::vector<int>> clauses;  // DIMACS literals
    bool operator==(const CnfInstance&) const = default;
};

// Equisatisfiability-preserving CNF transformation of a prenex formula.
// Definitions are full biconditionals (sound under both quantifier kinds);
// auxiliaries go into a final existential block numbered after every input
// variable. A body that already is a conjunction of clauses passes through
// without auxiliaries; constant bodies become the empty matrix (true) or the
// single empty clause (false).
CnfInstance tseitin(const QbfFormula& f);

std::string emit_qdimacs(const CnfInstance& c,
                         const std::vector<std::string>& comments = {});

struct QdimacsError : std::runtime_error {
    int line;
    QdimacsError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

CnfInstance parse_qdimacs(const std::string& text);

}  // namespace splcheck
