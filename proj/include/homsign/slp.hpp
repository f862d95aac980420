#pragma once

// Division-free straight-line programs with rational constants. A program is
// a list of instructions, each referring only to earlier nodes, plus a list
// of output nodes. Evaluation works over any ring with the library hooks.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace homsign {

enum class Op : std::uint8_t { Const, Input, Add, Sub, Mul };

struct Instr {
    Op op;
    std::uint32_t a = 0;  // Input: variable index; otherwise left operand
    std::uint32_t b = 0;
    Rational c;           // Const only
};

struct Slp {
    std::size_t num_inputs = 0;
    std::vector<Instr> code;
    std::vector<std::uint32_t> outputs;

    std::size_t num_outputs() const { return outputs.size(); }
    std::size_t length() const { return code.size(); }
};

template <class T>
std::vector<T> eval(const Slp& p, const std::vector<T>& point, const T& like) {
    if (point.size() != p.num_inputs) throw std::invalid_argument("slp arity mismatch");
    std::vector<T> v;
    v.reserve(p.code.size());
    for (const Instr& ins : p.code) {
        switch (ins.op) {
            case Op::Const: v.push_back(from_rational(like, ins.c)); break;
            case Op::Input: v.push_back(point[ins.a]); break;
            case Op::Add: v.push_back(v[ins.a] + v[ins.b]); break;
            case Op::Sub: v.push_back(v[ins.a] - v[ins.b]); break;
            case Op::Mul: v.push_back(v[ins.a] * v[ins.b]); break;
        }
    }
    std::vector<T> out;
    out.reserve(p.outputs.size());
    for (auto o : p.outputs) out.push_back(v[o]);
    return out;
}

template <class T>
std::vector<T> eval(const Slp& p, const std::vector<T>& point) {
    if (point.empty()) throw std::invalid_argument("eval without inputs needs an explicit ring element");
    return eval(p, point, point[0]);
}

/// Evaluation at a rational point.
inline std::vector<Rational> eval(const Slp& p, const std::vector<Rational>& point) {
    return eval(p, point, Rational(0));
}

using Node = std::uint32_t;

/// Incremental construction with light constant folding.
class SlpBuilder {
public:
    explicit SlpBuilder(std::size_t num_inputs) { slp_.num_inputs = num_inputs; }

    std::size_t num_inputs() const { return slp_.num_inputs; }

    Node input(std::size_t i) {
        if (i >= slp_.num_inputs) throw std::out_of_range("slp input index");
        auto it = inputs_.find(i);
        if (it != inputs_.end()) return it->second;
        Node n = push({Op::Input, static_cast<std::uint32_t>(i), 0, {}});
        inputs_.emplace(i, n);
        return n;
    }

    Node constant(const Rational& c) {
        auto it = consts_.find(c);
        if (it != consts_.end()) return it->second;
        Node n = push({Op::Const, 0, 0, c});
        consts_.emplace(c, n);
        return n;
    }

    Node add(Node a, Node b) {
        if (auto x = const_value(a), y = const_value(b); x && y) return constant(*x + *y);
        if (is_const(a, 0)) return b;
        if (is_const(b, 0)) return a;
        return push({Op::Add, a, b, {}});
    }
    Node sub(Node a, Node b) {
        if (auto x = const_value(a), y = const_value(b); x && y) return constant(*x - *y);
        if (is_const(b, 0)) return a;
        if (a == b) return constant(0);
        return push({Op::Sub, a, b, {}});
    }
    Node mul(Node a, Node b) {
        if (auto x = const_value(a), y = const_value(b); x && y) return constant(*x * *y);
        if (is_const(a, 0) || is_const(b, 0)) return constant(0);
        if (is_const(a, 1)) return b;
        if (is_const(b, 1)) return a;
        return push({Op::Mul, a, b, {}});
    }
    Node neg(Node a) { return sub(constant(0), a); }
    Node scale(const Rational& c, Node a) { return mul(constant(c), a); }

    Node sum(const std::vector<Node>& xs) {
        Node acc = constant(0);
        for (Node x : xs) acc = add(acc, x);
        return acc;
    }
    Node product(const std::vector<Node>& xs) {
        Node acc = constant(1);
        for (Node x : xs) acc = mul(acc, x);
        return acc;
    }
    /// Square-and-multiply.
    Node pow(Node a, unsigned e) {
        Node result = constant(1);
        Node b = a;
        while (e != 0) {
            if (e & 1u) result = mul(result, b);
            e >>= 1;
            if (e != 0) b = mul(b, b);
        }
        return result;
    }
    /// Horner evaluation of a univariate polynomial at a node.
    Node poly(const QPoly& p, Node x) {
        Node acc = constant(0);
        for (std::size_t i = p.size(); i-- > 0;) acc = add(mul(acc, x), constant(p[i]));
        return acc;
    }

    /// Replays `p` with its inputs bound to the given nodes; returns its outputs.
    std::vector<Node> inline_slp(const Slp& p, const std::vector<Node>& args) {
        return replay(p, args).second;
    }

    /// Replays `p` and returns the node map as well as the outputs.
    std::pair<std::vector<Node>, std::vector<Node>> replay(const Slp& p, const std::vector<Node>& args) {
        if (args.size() != p.num_inputs) throw std::invalid_argument("slp arity mismatch");
        std::vector<Node> map(p.code.size());
        for (std::size_t i = 0; i < p.code.size(); ++i) {
            const Instr& ins = p.code[i];
            switch (ins.op) {
                case Op::Const: map[i] = constant(ins.c); break;
                case Op::Input: map[i] = args[ins.a]; break;
                case Op::Add: map[i] = add(map[ins.a], map[ins.b]); break;
                case Op::Sub: map[i] = sub(map[ins.a], map[ins.b]); break;
                case Op::Mul: map[i] = mul(map[ins.a], map[ins.b]); break;
            }
        }
        std::vector<Node> outs;
        for (auto o : p.outputs) outs.push_back(map[o]);
        return {std::move(map), std::move(outs)};
    }

    /// Reverse-mode partial derivatives of `output` (a node of `p` after
    /// replay through `map`) with respect to each input of `p`.
    std::vector<Node> adjoints(const Slp& p, const std::vector<Node>& map, std::uint32_t output) {
        std::vector<std::optional<Node>> adj(p.code.size());
        std::vector<std::optional<Node>> grad(p.num_inputs);
        adj[output] = constant(1);
        auto acc = [this](std::optional<Node>& slot, Node v) { slot = slot ? add(*slot, v) : v; };
        for (std::size_t i = output + 1; i-- > 0;) {
            if (!adj[i]) continue;
            const Node a = *adj[i];
            const Instr& ins = p.code[i];
            switch (ins.op) {
                case Op::Const: break;
                case Op::Input: acc(grad[ins.a], a); break;
                case Op::Add:
                    acc(adj[ins.a], a);
                    acc(adj[ins.b], a);
                    break;
                case Op::Sub:
                    acc(adj[ins.a], a);
                    acc(adj[ins.b], neg(a));
                    break;
                case Op::Mul:
                    acc(adj[ins.a], mul(a, map[ins.b]));
                    acc(adj[ins.b], mul(a, map[ins.a]));
                    break;
            }
        }
        std::vector<Node> out;
        for (auto& g : grad) out.push_back(g ? *g : constant(0));
        return out;
    }

    Slp finish(const std::vector<Node>& outputs) const {
        Slp s = slp_;
        s.outputs.assign(outputs.begin(), outputs.end());
        return s;
    }

private:
    Node push(Instr ins) {
        slp_.code.push_back(std::move(ins));
        return static_cast<Node>(slp_.code.size() - 1);
    }
    std::optional<Rational> const_value(Node n) const {
        if (slp_.code[n].op == Op::Const) return slp_.code[n].c;
        return std::nullopt;
    }
    bool is_const(Node n, long v) const { return slp_.code[n].op == Op::Const && slp_.code[n].c == v; }

    Slp slp_;
    std::map<std::size_t, Node> inputs_;
    std::map<Rational, Node> consts_;
};

/// Slp emitting the partials of one output with respect to every input.
inline Slp gradient(const Slp& p, std::size_t output_index) {
    SlpBuilder b(p.num_inputs);
    std::vector<Node> args;
    for (std::size_t i = 0; i < p.num_inputs; ++i) args.push_back(b.input(i));
    auto [map, outs] = b.replay(p, args);
    return b.finish(b.adjoints(p, map, p.outputs.at(output_index)));
}

/// Values of all outputs followed by the Jacobian, row-major.
inline Slp with_jacobian(const Slp& p) {
    SlpBuilder b(p.num_inputs);
    std::vector<Node> args;
    for (std::size_t i = 0; i < p.num_inputs; ++i) args.push_back(b.input(i));
    auto [map, outs] = b.replay(p, args);
    std::vector<Node> all = outs;
    for (auto o : p.outputs) {
        auto g = b.adjoints(p, map, o);
        all.insert(all.end(), g.begin(), g.end());
    }
    return b.finish(all);
}

/// Keeps only the selected outputs.
inline Slp select_outputs(const Slp& p, const std::vector<std::size_t>& which) {
    Slp s = p;
    s.outputs.clear();
    for (auto i : which) s.outputs.push_back(p.outputs.at(i));
    return s;
}

/// Concatenates the outputs of programs over the same inputs.
inline Slp concat(const std::vector<Slp>& parts, std::size_t num_inputs) {
    SlpBuilder b(num_inputs);
    std::vector<Node> args;
    for (std::size_t i = 0; i < num_inputs; ++i) args.push_back(b.input(i));
    std::vector<Node> outs;
    for (const auto& p : parts) {
        auto o = b.inline_slp(p, args);
        outs.insert(outs.end(), o.begin(), o.end());
    }
    return b.finish(outs);
}

/// Invertible linear change of coordinates with its exact inverse.
class ChangeOfVariables {
public:
    explicit ChangeOfVariables(QMatrix m) : m_(std::move(m)), inv_(inverse(m_)) {}
    const QMatrix& matrix() const { return m_; }
    const QMatrix& inverse_matrix() const { return inv_; }
    std::size_t dim() const { return m_.rows(); }

    static ChangeOfVariables identity(std::size_t n) { return ChangeOfVariables(QMatrix::identity(n, Rational(0))); }

private:
    QMatrix m_;
    QMatrix inv_;
};

/// x -> p(M x).
inline Slp compose_linear(const Slp& p, const QMatrix& m) {
    if (m.rows() != p.num_inputs || m.cols() != p.num_inputs) throw std::invalid_argument("matrix size mismatch");
    SlpBuilder b(p.num_inputs);
    std::vector<Node> y;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Node> terms;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) terms.push_back(b.scale(m(i, j), b.input(j)));
        y.push_back(b.sum(terms));
    }
    return b.finish(b.inline_slp(p, y));
}

inline Slp compose_linear(const Slp& p, const ChangeOfVariables& m) { return compose_linear(p, m.matrix()); }

/// Fixes the first values.size() inputs; the result has the remaining inputs.
inline Slp substitute_prefix(const Slp& p, const std::vector<Rational>& values) {
    if (values.size() > p.num_inputs) throw std::invalid_argument("too many substituted values");
    SlpBuilder b(p.num_inputs - values.size());
    std::vector<Node> args;
    for (const auto& v : values) args.push_back(b.constant(v));
    for (std::size_t i = values.size(); i < p.num_inputs; ++i) args.push_back(b.input(i - values.size()));
    return b.finish(b.inline_slp(p, args));
}

// Expression parser: + - * ^, parentheses, integer and p/q literals,
// declared variable names. Unary minus binds looser than ^.
namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, const std::vector<std::string>& vars, SlpBuilder& b)
        : s_(text), vars_(vars), b_(b) {}

    Node parse_all() {
        Node n = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Node expr() {
        Node acc = term();
        for (;;) {
            if (eat('+')) acc = b_.add(acc, term());
            else if (eat('-')) acc = b_.sub(acc, term());
            else return acc;
        }
    }
    Node term() {
        Node acc = factor();
        while (eat('*')) acc = b_.mul(acc, factor());
        return acc;
    }
    Node factor() {
        if (eat('-')) return b_.neg(factor());
        if (eat('+')) return factor();
        Node base = primary();
        if (eat('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected nonnegative integer exponent");
            const std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 6) fail("exponent too large");
            return b_.pow(base, static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }
    Node primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Node n = expr();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return b_.constant(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return b_.input(i);
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character");
    }
    Rational number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string lit(s_.substr(start, pos_ - start));
        if (pos_ < s_.size() && s_[pos_] == '/') {
            const std::size_t slash = pos_++;
            const std::size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (dstart == pos_) {
                pos_ = slash;
                fail("expected denominator");
            }
            std::string den(s_.substr(dstart, pos_ - dstart));
            if (Integer(den) == 0) {
                pos_ = dstart;
                fail("zero denominator");
            }
            lit += "/" + den;
        }
        return parse_rational(lit);
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    SlpBuilder& b_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// One output per expression, all over the same ordered variable names.
inline Slp parse_system(const std::vector<std::string>& exprs, const std::vector<std::string>& vars) {
    SlpBuilder b(vars.size());
    std::vector<Node> outs;
    for (const auto& e : exprs) outs.push_back(detail::ExprParser(e, vars, b).parse_all());
    return b.finish(outs);
}

inline Slp parse(std::string_view text, const std::vector<std::string>& vars) {
    SlpBuilder b(vars.size());
    Node n = detail::ExprParser(text, vars, b).parse_all();
    return b.finish({n});
}

/// Default names x1..xn.
inline std::vector<std::string> default_variables(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

}  // namespace homsign
