#include "lagvol/expr.hpp"

#include "lagvol/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace lagvol {

struct Expression::Node {
    enum class Op { number, var_x, var_y, add, sub, mul, div, pow, neg, call };
    Op op = Op::number;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse()
    {
        NodePtr n = sum();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return n;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("expression '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr sum()
    {
        NodePtr n = product();
        for (;;) {
            if (accept('+'))
                n = make(Node::Op::add, n, product());
            else if (accept('-'))
                n = make(Node::Op::sub, n, product());
            else
                return n;
        }
    }

    NodePtr product()
    {
        NodePtr n = unary();
        for (;;) {
            if (accept('*'))
                n = make(Node::Op::mul, n, unary());
            else if (accept('/'))
                n = make(Node::Op::div, n, unary());
            else
                return n;
        }
    }

    NodePtr unary()
    {
        if (accept('-'))
            return make(Node::Op::neg, unary());
        if (accept('+'))
            return unary();
        return power();
    }

    // Right associative; binds tighter than unary minus on its left operand.
    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^'))
            return make(Node::Op::pow, base, unary());
        return base;
    }

    NodePtr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end");
        if (accept('(')) {
            NodePtr n = sum();
            if (!accept(')'))
                fail("missing ')'");
            return n;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
            if (ec != std::errc())
                fail("bad number");
            pos_ = static_cast<std::size_t>(ptr - s_.data());
            auto n = std::make_shared<Node>();
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string_view id = s_.substr(start, pos_ - start);
            if (id == "x")
                return make(Node::Op::var_x);
            if (id == "y")
                return make(Node::Op::var_y);
            if (id == "pi") {
                auto n = std::make_shared<Node>();
                n->value = std::numbers::pi;
                return n;
            }
            double (*fn)(double) = nullptr;
            if (id == "exp")
                fn = [](double v) { return std::exp(v); };
            else if (id == "log")
                fn = [](double v) { return std::log(v); };
            else if (id == "sin")
                fn = [](double v) { return std::sin(v); };
            else if (id == "cos")
                fn = [](double v) { return std::cos(v); };
            else if (id == "tan")
                fn = [](double v) { return std::tan(v); };
            else if (id == "tanh")
                fn = [](double v) { return std::tanh(v); };
            else if (id == "sqrt")
                fn = [](double v) { return std::sqrt(v); };
            else if (id == "abs")
                fn = [](double v) { return std::abs(v); };
            else
                fail("unknown identifier '" + std::string(id) + "'");
            if (!accept('('))
                fail("expected '(' after function name");
            NodePtr arg = sum();
            if (!accept(')'))
                fail("missing ')'");
            auto n = std::make_shared<Node>();
            n->op = Node::Op::call;
            n->fn = fn;
            n->a = arg;
            return n;
        }
        fail("unexpected character");
    }
};

double eval(const Node& n, double x, double y)
{
    switch (n.op) {
    case Node::Op::number: return n.value;
    case Node::Op::var_x: return x;
    case Node::Op::var_y: return y;
    case Node::Op::add: return eval(*n.a, x, y) + eval(*n.b, x, y);
    case Node::Op::sub: return eval(*n.a, x, y) - eval(*n.b, x, y);
    case Node::Op::mul: return eval(*n.a, x, y) * eval(*n.b, x, y);
    case Node::Op::div: return eval(*n.a, x, y) / eval(*n.b, x, y);
    case Node::Op::pow: return std::pow(eval(*n.a, x, y), eval(*n.b, x, y));
    case Node::Op::neg: return -eval(*n.a, x, y);
    case Node::Op::call: return n.fn(eval(*n.a, x, y));
    }
    return 0.0;
}

} // namespace

Expression Expression::parse(std::string_view text)
{
    Expression e;
    e.root_ = Parser(text).parse();
    e.text_ = std::string(text);
    return e;
}

double Expression::operator()(double x, double y) const
{
    return eval(*root_, x, y);
}

} // namespace lagvol
