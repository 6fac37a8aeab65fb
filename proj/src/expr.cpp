#include "tpo/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace tpo {

struct Expr::Node {
    enum class Kind { Const, VarX, VarY, VarT, Add, Sub, Mul, Div, Neg, Sin, Exp };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x, double y, double t) const {
        switch (kind) {
            case Kind::Const: return value;
            case Kind::VarX: return x;
            case Kind::VarY: return y;
            case Kind::VarT: return t;
            case Kind::Add: return lhs->eval(x, y, t) + rhs->eval(x, y, t);
            case Kind::Sub: return lhs->eval(x, y, t) - rhs->eval(x, y, t);
            case Kind::Mul: return lhs->eval(x, y, t) * rhs->eval(x, y, t);
            case Kind::Div: return lhs->eval(x, y, t) / rhs->eval(x, y, t);
            case Kind::Neg: return -lhs->eval(x, y, t);
            case Kind::Sin: return std::sin(lhs->eval(x, y, t));
            case Kind::Exp: return std::exp(lhs->eval(x, y, t));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        auto e = expression();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expr: " + what + " at position " + std::to_string(pos_) +
                                    " in \"" + s_ + "\"");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    static NodePtr make(Expr::Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr,
                        double v = 0.0) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        n->value = v;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr expression() {
        auto lhs = term();
        for (;;) {
            if (consume('+')) lhs = make(Expr::Node::Kind::Add, lhs, term());
            else if (consume('-')) lhs = make(Expr::Node::Kind::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = factor();
        for (;;) {
            if (consume('*')) lhs = make(Expr::Node::Kind::Mul, lhs, factor());
            else if (consume('/')) lhs = make(Expr::Node::Kind::Div, lhs, factor());
            else return lhs;
        }
    }

    NodePtr factor() {
        skip_ws();
        if (consume('-')) return make(Expr::Node::Kind::Neg, factor());
        if (consume('+')) return factor();
        if (consume('(')) {
            auto e = expression();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected character");
    }

    NodePtr number() {
        const char* start = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) fail("malformed number");
        pos_ += static_cast<size_t>(end - start);
        return make(Expr::Node::Kind::Const, nullptr, nullptr, v);
    }

    NodePtr identifier() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x") return make(Expr::Node::Kind::VarX);
        if (name == "y") return make(Expr::Node::Kind::VarY);
        if (name == "t") return make(Expr::Node::Kind::VarT);
        if (name == "sin" || name == "exp") {
            if (!consume('(')) fail("expected '(' after function name");
            auto arg = expression();
            if (!consume(')')) fail("expected ')'");
            return make(name == "sin" ? Expr::Node::Kind::Sin : Expr::Node::Kind::Exp, arg);
        }
        pos_ = start;
        fail("unknown identifier '" + name + "'");
    }
};

} // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

double Expr::eval(double x, double y, double t) const {
    if (!root_) throw std::logic_error("expr: evaluating an empty expression");
    return root_->eval(x, y, t);
}

} // namespace tpo
