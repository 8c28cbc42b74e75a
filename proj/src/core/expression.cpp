#include "core/expression.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace dnodal {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    std::vector<Expression::Op> run() {
        skip_space();
        parse_sum();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return std::move(program_);
    }

private:
    using Op = Expression::Op;
    using OpCode = Expression::OpCode;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression error: " + msg, 0, static_cast<int>(pos_) + 1);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void emit(OpCode code) { program_.push_back(Op{code}); }

    void parse_sum() {
        parse_product();
        for (;;) {
            if (accept('+')) {
                parse_product();
                emit(OpCode::add);
            } else if (accept('-')) {
                parse_product();
                emit(OpCode::sub);
            } else {
                return;
            }
        }
    }

    void parse_product() {
        parse_unary();
        for (;;) {
            skip_space();
            if (pos_ + 1 < text_.size() && text_[pos_] == '*' && text_[pos_ + 1] == '*') return;
            if (accept('*')) {
                parse_unary();
                emit(OpCode::mul);
            } else if (accept('/')) {
                parse_unary();
                emit(OpCode::div);
            } else {
                return;
            }
        }
    }

    void parse_unary() {
        if (accept('-')) {
            parse_unary();
            emit(OpCode::neg);
        } else if (accept('+')) {
            parse_unary();
        } else {
            parse_power();
        }
    }

    bool accept_power() {
        skip_space();
        if (accept('^')) return true;
        if (pos_ + 1 < text_.size() && text_[pos_] == '*' && text_[pos_ + 1] == '*') {
            pos_ += 2;
            return true;
        }
        return false;
    }

    void parse_power() {
        parse_primary();
        if (accept_power()) {
            parse_unary();
            emit(OpCode::pow);
        }
    }

    void parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            parse_sum();
            if (!accept(')')) fail("expected ')'");
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            parse_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            parse_identifier();
            return;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    void parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        program_.push_back(Op{OpCode::push_const, Expression::Function::sin, 0, value});
    }

    void parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));

        if (auto fn = function_named(name)) {
            if (!accept('(')) fail("expected '(' after " + name);
            parse_sum();
            if (!accept(')')) fail("expected ')'");
            program_.push_back(Op{OpCode::call, *fn});
            return;
        }
        const auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it != vars_.end()) {
            program_.push_back(
                Op{OpCode::push_var, Expression::Function::sin, static_cast<int>(it - vars_.begin())});
            return;
        }
        if (name == "pi") {
            program_.push_back(Op{OpCode::push_const, Expression::Function::sin, 0, std::numbers::pi});
            return;
        }
        if (name == "e") {
            program_.push_back(Op{OpCode::push_const, Expression::Function::sin, 0, std::numbers::e});
            return;
        }
        pos_ = start;
        fail("unknown identifier '" + name + "'");
    }

    static std::optional<Expression::Function> function_named(const std::string& name) {
        using F = Expression::Function;
        if (name == "sin") return F::sin;
        if (name == "cos") return F::cos;
        if (name == "tan") return F::tan;
        if (name == "exp") return F::exp;
        if (name == "log") return F::log;
        if (name == "sqrt") return F::sqrt;
        return std::nullopt;
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
    std::vector<Op> program_;
};

namespace {

int stack_depth(const std::vector<Expression::Op>& program) {
    int depth = 0;
    int deepest = 0;
    for (const auto& op : program) {
        switch (op.code) {
        case Expression::OpCode::push_const:
        case Expression::OpCode::push_var: ++depth; break;
        case Expression::OpCode::neg:
        case Expression::OpCode::call: break;
        default: --depth; break;
        }
        deepest = std::max(deepest, depth);
    }
    return deepest;
}

double apply(Expression::Function fn, double v) {
    switch (fn) {
    case Expression::Function::sin: return std::sin(v);
    case Expression::Function::cos: return std::cos(v);
    case Expression::Function::tan: return std::tan(v);
    case Expression::Function::exp: return std::exp(v);
    case Expression::Function::log: return std::log(v);
    case Expression::Function::sqrt: return std::sqrt(v);
    }
    return v;
}

}  // namespace

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
    Expression e;
    e.source_ = std::string(text);
    e.variables_ = std::move(variables);
    e.program_ = ExpressionParser(e.source_, e.variables_).run();
    e.max_stack_ = stack_depth(e.program_);
    return e;
}

Expression Expression::constant(double value) {
    Expression e;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    e.source_.assign(buf, res.ptr);
    e.program_.push_back(Op{OpCode::push_const, Function::sin, 0, value});
    e.max_stack_ = 1;
    return e;
}

bool Expression::is_constant() const noexcept {
    return std::none_of(program_.begin(), program_.end(),
                        [](const Op& op) { return op.code == OpCode::push_var; });
}

double Expression::evaluate(std::span<const double> values) const {
    // Expressions from problem files are short; 64 slots covers any sane nesting.
    double small[64];
    std::vector<double> large;
    double* stack = small;
    if (max_stack_ > 64) {
        large.resize(static_cast<std::size_t>(max_stack_));
        stack = large.data();
    }
    int top = -1;
    for (const auto& op : program_) {
        switch (op.code) {
        case OpCode::push_const: stack[++top] = op.value; break;
        case OpCode::push_var: stack[++top] = values[static_cast<std::size_t>(op.index)]; break;
        case OpCode::add: stack[top - 1] += stack[top]; --top; break;
        case OpCode::sub: stack[top - 1] -= stack[top]; --top; break;
        case OpCode::mul: stack[top - 1] *= stack[top]; --top; break;
        case OpCode::div: stack[top - 1] /= stack[top]; --top; break;
        case OpCode::pow: stack[top - 1] = std::pow(stack[top - 1], stack[top]); --top; break;
        case OpCode::neg: stack[top] = -stack[top]; break;
        case OpCode::call: stack[top] = apply(op.fn, stack[top]); break;
        }
    }
    return top == 0 ? stack[0] : 0.0;
}

}  // namespace dnodal
