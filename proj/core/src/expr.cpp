#include "fracsolve/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cctype>

namespace fracsolve {

namespace {

struct Token {
    enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    Kind kind;
    double number = 0.0;
    std::string_view text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_whitespace();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= src_.size()) {
            tok.kind = Token::Kind::end;
            return tok;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': advance(); tok.kind = Token::Kind::plus; return tok;
            case '-': advance(); tok.kind = Token::Kind::minus; return tok;
            case '*': advance(); tok.kind = Token::Kind::star; return tok;
            case '/': advance(); tok.kind = Token::Kind::slash; return tok;
            case '^': advance(); tok.kind = Token::Kind::caret; return tok;
            case '(': advance(); tok.kind = Token::Kind::lparen; return tok;
            case ')': advance(); tok.kind = Token::Kind::rparen; return tok;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return lex_number(tok);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t begin = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                advance();
            }
            tok.kind = Token::Kind::ident;
            tok.text = src_.substr(begin, pos_ - begin);
            return tok;
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "'", line_, column_);
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_whitespace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            advance();
        }
    }

    Token lex_number(Token tok) {
        const std::size_t begin = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            advance();
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            }
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                advance();
            }
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    advance();
                }
            } else {
                // Not an exponent after all; hand 'e...' back to the ident lexer.
                pos_ = mark;
            }
        }
        const std::string_view text = src_.substr(begin, pos_ - begin);
        double value = 0.0;
        const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
        if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
            throw parse_error("malformed number '" + std::string(text) + "'", tok.line, tok.column);
        }
        tok.kind = Token::Kind::number;
        tok.number = value;
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

}  // namespace

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : lexer_(src) { current_ = lexer_.next(); }

    ExprFn run(std::string_view src) {
        ExprFn fn;
        fn.source_.assign(src);
        out_ = &fn;
        parse_expr(0);
        if (current_.kind != Token::Kind::end) {
            fail("unexpected trailing input");
        }
        return fn;
    }

private:
    using Kind = Token::Kind;
    using Op = ExprFn::Op;

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(what, current_.line, current_.column);
    }

    void consume() { current_ = lexer_.next(); }

    void enter(std::size_t depth) const {
        if (depth > ExprFn::kMaxDepth) {
            fail("expression nested deeper than " + std::to_string(ExprFn::kMaxDepth) +
                 " levels");
        }
    }

    void emit(Op op, double operand = 0.0) { out_->program_.push_back({op, operand}); }

    // depth counts genuine nesting only: parenthesised groups, function
    // arguments, chained unary minus and power exponents.  The left-to-right
    // binary loops do not recurse and are unlimited.
    void parse_expr(std::size_t depth) {
        parse_term(depth);
        while (current_.kind == Kind::plus || current_.kind == Kind::minus) {
            const bool plus = current_.kind == Kind::plus;
            consume();
            parse_term(depth);
            emit(plus ? Op::add : Op::sub);
        }
    }

    void parse_term(std::size_t depth) {
        parse_unary(depth);
        while (current_.kind == Kind::star || current_.kind == Kind::slash) {
            const bool mul = current_.kind == Kind::star;
            consume();
            parse_unary(depth);
            emit(mul ? Op::mul : Op::div);
        }
    }

    void parse_unary(std::size_t depth) {
        enter(depth);
        if (current_.kind == Kind::minus) {
            consume();
            parse_unary(depth + 1);
            emit(Op::neg);
            return;
        }
        parse_power(depth);
    }

    void parse_power(std::size_t depth) {
        parse_primary(depth);
        if (current_.kind == Kind::caret) {
            consume();
            // Right-associative; the exponent re-enters at the unary level so
            // that forms like 2^-3 and 2^3^2 parse as expected.
            parse_unary(depth + 1);
            emit(Op::pow);
        }
    }

    void parse_primary(std::size_t depth) {
        enter(depth);
        switch (current_.kind) {
            case Kind::number: {
                emit(Op::push, current_.number);
                consume();
                return;
            }
            case Kind::lparen: {
                consume();
                parse_expr(depth + 1);
                if (current_.kind != Kind::rparen) {
                    fail("expected ')'");
                }
                consume();
                return;
            }
            case Kind::ident: {
                const std::string_view name = current_.text;
                if (name == "t") {
                    emit(Op::load_t);
                    out_->uses_t_ = true;
                    consume();
                    return;
                }
                if (name == "s") {
                    emit(Op::load_s);
                    out_->uses_s_ = true;
                    consume();
                    return;
                }
                if (name == "u") {
                    emit(Op::load_u);
                    out_->uses_u_ = true;
                    consume();
                    return;
                }
                Op fn;
                if (name == "exp") {
                    fn = Op::fn_exp;
                } else if (name == "sin") {
                    fn = Op::fn_sin;
                } else if (name == "cos") {
                    fn = Op::fn_cos;
                } else if (name == "abs") {
                    fn = Op::fn_abs;
                } else if (name == "sqrt") {
                    fn = Op::fn_sqrt;
                } else {
                    fail("unknown identifier '" + std::string(name) + "'");
                }
                consume();
                if (current_.kind != Kind::lparen) {
                    fail("expected '(' after function name");
                }
                consume();
                parse_expr(depth + 1);
                if (current_.kind != Kind::rparen) {
                    fail("expected ')'");
                }
                consume();
                emit(fn);
                return;
            }
            default:
                fail("expected a number, variable, function or '('");
        }
    }

    Lexer lexer_;
    Token current_;
    ExprFn* out_ = nullptr;
};

ExprFn ExprFn::parse(std::string_view src) {
    if (src.size() > kMaxSource) {
        throw parse_error("expression source exceeds " + std::to_string(kMaxSource) + " bytes", 1,
                          1);
    }
    ExprParser parser(src);
    return parser.run(src);
}

double ExprFn::operator()(double t, double s, double u) const {
    // Pending operands are bounded by a small multiple of the nesting depth.
    std::array<double, 4 * kMaxDepth + 8> stack;
    std::size_t sp = 0;
    auto push = [&](double v) {
        if (!std::isfinite(v)) {
            throw evaluation_error("expression '" + source_ + "' produced a non-finite value");
        }
        if (sp >= stack.size()) {
            throw evaluation_error("expression '" + source_ + "' exhausted the operand stack");
        }
        stack[sp++] = v;
    };
    auto pop = [&]() { return stack[--sp]; };
    for (const Instr& ins : program_) {
        switch (ins.op) {
            case Op::push: push(ins.operand); break;
            case Op::load_t: push(t); break;
            case Op::load_s: push(s); break;
            case Op::load_u: push(u); break;
            case Op::add: { const double b = pop(); push(pop() + b); break; }
            case Op::sub: { const double b = pop(); push(pop() - b); break; }
            case Op::mul: { const double b = pop(); push(pop() * b); break; }
            case Op::div: { const double b = pop(); push(pop() / b); break; }
            case Op::pow: { const double b = pop(); push(std::pow(pop(), b)); break; }
            case Op::neg: push(-pop()); break;
            case Op::fn_exp: push(std::exp(pop())); break;
            case Op::fn_sin: push(std::sin(pop())); break;
            case Op::fn_cos: push(std::cos(pop())); break;
            case Op::fn_abs: push(std::abs(pop())); break;
            case Op::fn_sqrt: push(std::sqrt(pop())); break;
        }
    }
    return pop();
}

}  // namespace fracsolve
