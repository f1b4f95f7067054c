#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fracsolve/errors.hpp"

namespace fracsolve {

/// Syntax error with a 1-based source position.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) +
                ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A closed-form scalar function of (t, s, u) from a minimal total grammar:
/// binary + - * / ^, unary - , functions exp sin cos abs sqrt, real literals
/// and parentheses.  '^' is right-associative and binds tighter than unary
/// minus, which binds tighter than * and /, which bind tighter than + and -.
///
/// parse() either returns a function or throws parse_error with the offending
/// position; it never crashes on arbitrary input (up to 64 KiB).  Evaluation
/// checks every intermediate result and throws evaluation_error on the first
/// non-finite value.
class ExprFn {
public:
    static ExprFn parse(std::string_view src);
    static constexpr std::size_t kMaxDepth = 64;
    static constexpr std::size_t kMaxSource = 64 * 1024;

    double operator()(double t, double s, double u) const;

    bool uses_t() const noexcept { return uses_t_; }
    bool uses_s() const noexcept { return uses_s_; }
    bool uses_u() const noexcept { return uses_u_; }

    const std::string& source() const noexcept { return source_; }

private:
    enum class Op : std::uint8_t {
        push,
        load_t,
        load_s,
        load_u,
        add,
        sub,
        mul,
        div,
        pow,
        neg,
        fn_exp,
        fn_sin,
        fn_cos,
        fn_abs,
        fn_sqrt,
    };
    struct Instr {
        Op op;
        double operand = 0.0;
    };

    friend class ExprParser;

    ExprFn() = default;

    std::vector<Instr> program_;
    std::string source_;
    bool uses_t_ = false;
    bool uses_s_ = false;
    bool uses_u_ = false;
};

}  // namespace fracsolve
