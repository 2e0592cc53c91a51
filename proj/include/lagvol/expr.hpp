#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace lagvol {

/// Closed-form scalar expression over x and y (grid initial data).
/// Grammar: + - * / ^, unary minus, parentheses, numbers, the constant pi
/// and the functions exp, log, sin, cos, tan, tanh, sqrt, abs.
class Expression {
public:
    struct Node;

    static Expression parse(std::string_view text);

    double operator()(double x, double y) const;
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace lagvol
