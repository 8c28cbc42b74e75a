#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnodal {

/// Compiled arithmetic expression over a fixed list of named variables.
///
/// Grammar: `+ - * /`, `^` (or `**`, right associative), unary minus,
/// parentheses, numeric literals, the constants `pi` and `e`, and the
/// functions sin, cos, tan, exp, log, sqrt. Parsing compiles to a small
/// postfix program; evaluation is allocation-free and thread-safe.
class Expression {
public:
    /// Throws ParseError carrying the 1-based column of the offending token.
    static Expression parse(std::string_view text, std::vector<std::string> variables);

    /// Constant expression (no variables).
    static Expression constant(double value);

    double evaluate(std::span<const double> values) const;
    double operator()(double x) const { return evaluate(std::span<const double>(&x, 1)); }
    double operator()(double x, double t) const {
        const double v[2] = {x, t};
        return evaluate(v);
    }

    const std::string& source() const noexcept { return source_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    bool is_constant() const noexcept;

    enum class OpCode : unsigned char { push_const, push_var, add, sub, mul, div, pow, neg, call };
    enum class Function : unsigned char { sin, cos, tan, exp, log, sqrt };
    struct Op {
        OpCode code;
        Function fn = Function::sin;
        int index = 0;
        double value = 0.0;
    };

private:
    friend class ExpressionParser;
    std::string source_;
    std::vector<std::string> variables_;
    std::vector<Op> program_;
    int max_stack_ = 0;
};

}  // namespace dnodal
