// Tiny arithmetic expression language for config files: literals, the
// variables x, y, t, the operators + - * /, parentheses, and the
// functions sin and exp. No host-language eval.
#pragma once

#include <memory>
#include <string>

namespace tpo {

class Expr {
public:
    // Throws std::invalid_argument with a position diagnostic on bad input.
    static Expr parse(const std::string& text);

    double eval(double x, double y = 0.0, double t = 0.0) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace tpo
