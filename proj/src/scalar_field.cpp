#include "degsol/scalar_field.hpp"

#include <cmath>
#include <vector>

#include "degsol/errors.hpp"

namespace degsol {

struct ScalarField::Node {
  enum Kind { k_const, k_var, k_add, k_mul, k_pow, k_sin, k_cos, k_exp, k_gauss };

  Kind kind = k_const;
  cd value = 0.0;    // k_const
  int axis = 0;      // k_var
  int exponent = 0;  // k_pow
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using Node = ScalarField::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(cd v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::k_const;
  n->value = v;
  return n;
}

NodePtr make_var(int axis) {
  if (axis < 0 || axis > 3) throw Error("ScalarField: axis out of range");
  auto n = std::make_shared<Node>();
  n->kind = Node::k_var;
  n->axis = axis;
  return n;
}

NodePtr make_add(std::vector<NodePtr> kids) {
  std::vector<NodePtr> flat;
  cd c = 0.0;
  for (auto& k : kids) {
    if (k->kind == Node::k_add) {
      for (auto& kk : k->kids) {
        if (kk->kind == Node::k_const)
          c += kk->value;
        else
          flat.push_back(kk);
      }
    } else if (k->kind == Node::k_const) {
      c += k->value;
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (c != 0.0) flat.push_back(make_const(c));
  if (flat.empty()) return make_const(0.0);
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Node::k_add;
  n->kids = std::move(flat);
  return n;
}

NodePtr make_mul(std::vector<NodePtr> kids) {
  std::vector<NodePtr> flat;
  cd c = 1.0;
  for (auto& k : kids) {
    if (k->kind == Node::k_mul) {
      for (auto& kk : k->kids) {
        if (kk->kind == Node::k_const)
          c *= kk->value;
        else
          flat.push_back(kk);
      }
    } else if (k->kind == Node::k_const) {
      c *= k->value;
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (c == 0.0) return make_const(0.0);
  if (c != 1.0) flat.push_back(make_const(c));
  if (flat.empty()) return make_const(1.0);
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Node::k_mul;
  n->kids = std::move(flat);
  return n;
}

NodePtr make_unary(Node::Kind kind, NodePtr arg) {
  if (arg->kind == Node::k_const) {
    switch (kind) {
      case Node::k_sin: return make_const(std::sin(arg->value));
      case Node::k_cos: return make_const(std::cos(arg->value));
      case Node::k_exp: return make_const(std::exp(arg->value));
      case Node::k_gauss: return make_const(std::exp(-arg->value * arg->value));
      default: break;
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->kids.push_back(std::move(arg));
  return n;
}

NodePtr make_pow(NodePtr base, int exponent) {
  if (exponent < 2 || exponent > 4)
    throw Error("ScalarField: pow exponent must be in 2..4");
  if (base->kind == Node::k_const) {
    cd v = 1.0;
    for (int i = 0; i < exponent; ++i) v *= base->value;
    return make_const(v);
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::k_pow;
  n->exponent = exponent;
  n->kids.push_back(std::move(base));
  return n;
}

cd eval_node(const Node& n, const std::array<cd, 4>& args) {
  switch (n.kind) {
    case Node::k_const: return n.value;
    case Node::k_var: return args[static_cast<std::size_t>(n.axis)];
    case Node::k_add: {
      cd s = 0.0;
      for (const auto& k : n.kids) s += eval_node(*k, args);
      return s;
    }
    case Node::k_mul: {
      cd s = 1.0;
      for (const auto& k : n.kids) s *= eval_node(*k, args);
      return s;
    }
    case Node::k_pow: {
      cd b = eval_node(*n.kids[0], args);
      cd s = 1.0;
      for (int i = 0; i < n.exponent; ++i) s *= b;
      return s;
    }
    case Node::k_sin: return std::sin(eval_node(*n.kids[0], args));
    case Node::k_cos: return std::cos(eval_node(*n.kids[0], args));
    case Node::k_exp: return std::exp(eval_node(*n.kids[0], args));
    case Node::k_gauss: {
      cd a = eval_node(*n.kids[0], args);
      return std::exp(-a * a);
    }
  }
  return 0.0;
}

NodePtr diff_node(const NodePtr& n, int axis);

NodePtr diff_kids_product(const Node& n, int axis) {
  // d(f1 f2 ... fn) = sum_i f1 .. fi' .. fn
  std::vector<NodePtr> terms;
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    std::vector<NodePtr> factors;
    for (std::size_t j = 0; j < n.kids.size(); ++j) {
      factors.push_back(j == i ? diff_node(n.kids[j], axis) : n.kids[j]);
    }
    terms.push_back(make_mul(std::move(factors)));
  }
  return make_add(std::move(terms));
}

NodePtr diff_node(const NodePtr& n, int axis) {
  switch (n->kind) {
    case Node::k_const: return make_const(0.0);
    case Node::k_var: return make_const(n->axis == axis ? 1.0 : 0.0);
    case Node::k_add: {
      std::vector<NodePtr> kids;
      for (const auto& k : n->kids) kids.push_back(diff_node(k, axis));
      return make_add(std::move(kids));
    }
    case Node::k_mul: return diff_kids_product(*n, axis);
    case Node::k_pow: {
      NodePtr inner = diff_node(n->kids[0], axis);
      NodePtr lowered = n->exponent == 2
                            ? n->kids[0]
                            : make_pow(n->kids[0], n->exponent - 1);
      return make_mul({make_const(static_cast<double>(n->exponent)),
                       std::move(lowered), std::move(inner)});
    }
    case Node::k_sin:
      return make_mul({make_unary(Node::k_cos, n->kids[0]),
                       diff_node(n->kids[0], axis)});
    case Node::k_cos:
      return make_mul({make_const(-1.0), make_unary(Node::k_sin, n->kids[0]),
                       diff_node(n->kids[0], axis)});
    case Node::k_exp:
      return make_mul({n, diff_node(n->kids[0], axis)});
    case Node::k_gauss:
      return make_mul({make_const(-2.0), n->kids[0], n,
                       diff_node(n->kids[0], axis)});
  }
  return make_const(0.0);
}

NodePtr substitute_node(const NodePtr& n, const std::array<NodePtr, 4>& repl) {
  switch (n->kind) {
    case Node::k_const: return n;
    case Node::k_var: return repl[static_cast<std::size_t>(n->axis)];
    case Node::k_add:
    case Node::k_mul: {
      std::vector<NodePtr> kids;
      for (const auto& k : n->kids) kids.push_back(substitute_node(k, repl));
      return n->kind == Node::k_add ? make_add(std::move(kids))
                                    : make_mul(std::move(kids));
    }
    case Node::k_pow:
      return make_pow(substitute_node(n->kids[0], repl), n->exponent);
    default:
      return make_unary(n->kind, substitute_node(n->kids[0], repl));
  }
}

bool depends_node(const Node& n, int axis) {
  if (n.kind == Node::k_var) return n.axis == axis;
  for (const auto& k : n.kids)
    if (depends_node(*k, axis)) return true;
  return false;
}

nlohmann::json node_to_json(const Node& n) {
  using nlohmann::json;
  switch (n.kind) {
    case Node::k_const:
      return json{{"op", "const"}, {"re", n.value.real()}, {"im", n.value.imag()}};
    case Node::k_var:
      return json{{"op", "var"}, {"axis", n.axis}};
    case Node::k_add:
    case Node::k_mul: {
      json args = json::array();
      for (const auto& k : n.kids) args.push_back(node_to_json(*k));
      return json{{"op", n.kind == Node::k_add ? "add" : "mul"}, {"args", args}};
    }
    case Node::k_pow:
      return json{{"op", "pow"}, {"n", n.exponent},
                  {"base", node_to_json(*n.kids[0])}};
    case Node::k_sin:
      return json{{"op", "sin"}, {"arg", node_to_json(*n.kids[0])}};
    case Node::k_cos:
      return json{{"op", "cos"}, {"arg", node_to_json(*n.kids[0])}};
    case Node::k_exp:
      return json{{"op", "exp"}, {"arg", node_to_json(*n.kids[0])}};
    case Node::k_gauss:
      return json{{"op", "gaussian"}, {"arg", node_to_json(*n.kids[0])}};
  }
  return {};
}

NodePtr node_from_json(const nlohmann::json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "const")
    return make_const(cd(j.at("re").get<double>(), j.value("im", 0.0)));
  if (op == "var") return make_var(j.at("axis").get<int>());
  if (op == "add" || op == "mul") {
    std::vector<NodePtr> kids;
    for (const auto& a : j.at("args")) kids.push_back(node_from_json(a));
    return op == "add" ? make_add(std::move(kids)) : make_mul(std::move(kids));
  }
  if (op == "pow")
    return make_pow(node_from_json(j.at("base")), j.at("n").get<int>());
  if (op == "sin") return make_unary(Node::k_sin, node_from_json(j.at("arg")));
  if (op == "cos") return make_unary(Node::k_cos, node_from_json(j.at("arg")));
  if (op == "exp") return make_unary(Node::k_exp, node_from_json(j.at("arg")));
  if (op == "gaussian")
    return make_unary(Node::k_gauss, node_from_json(j.at("arg")));
  throw Error("ScalarField: unknown expression op '" + op + "'");
}

}  // namespace

ScalarField::ScalarField() : root_(make_const(0.0)) {}
ScalarField::ScalarField(std::shared_ptr<const Node> root)
    : root_(std::move(root)) {}

ScalarField ScalarField::constant(cd value) {
  return ScalarField(make_const(value));
}

ScalarField ScalarField::var(int axis) { return ScalarField(make_var(axis)); }

ScalarField ScalarField::linear(cd c0, cd c1, cd c2, cd c3, cd offset) {
  return ScalarField(make_add({make_mul({make_const(c0), make_var(0)}),
                               make_mul({make_const(c1), make_var(1)}),
                               make_mul({make_const(c2), make_var(2)}),
                               make_mul({make_const(c3), make_var(3)}),
                               make_const(offset)}));
}

ScalarField ScalarField::random_catalog(std::uint64_t& state) {
  auto coeff = [&state](double lo, double hi) {
    double mag = uniform_in(state, lo, hi);
    return (splitmix64(state) & 1u) ? mag : -mag;
  };
  auto random_phase_arg = [&](double scale) {
    return linear(coeff(0.2, scale), coeff(0.2, scale), coeff(0.2, scale),
                  coeff(0.2, scale), uniform_in(state, 0.0, 2.0 * pi));
  };

  const int n_terms = 1 + static_cast<int>(splitmix64(state) % 3);
  ScalarField f = constant(coeff(0.05, 0.4));
  for (int i = 0; i < n_terms; ++i) {
    const double amp = coeff(0.3, 1.0);
    switch (splitmix64(state) % 3) {
      case 0: f = f + amp * sin(random_phase_arg(1.0)); break;
      case 1: f = f + amp * cos(random_phase_arg(1.0)); break;
      default: f = f + amp * gaussian(random_phase_arg(0.5)); break;
    }
  }
  return f;
}

ScalarField ScalarField::pow(int exponent) const {
  return ScalarField(make_pow(root_, exponent));
}

cd ScalarField::operator()(const SpacetimePoint& p) const {
  return eval({cd(p.t), cd(p.x), cd(p.y), cd(p.z)});
}

cd ScalarField::eval(const std::array<cd, 4>& args) const {
  return eval_node(*root_, args);
}

double ScalarField::real_at(const SpacetimePoint& p, double tol) const {
  const cd v = (*this)(p);
  if (std::abs(v.imag()) > tol * (1.0 + std::abs(v)))
    throw NonRealPotential("expected a real value, got imaginary part " +
                           std::to_string(v.imag()));
  return v.real();
}

ScalarField ScalarField::derivative(int axis) const {
  return ScalarField(diff_node(root_, axis));
}

ScalarField ScalarField::substitute(
    const std::array<ScalarField, 4>& repl) const {
  return ScalarField(substitute_node(
      root_, {repl[0].root_, repl[1].root_, repl[2].root_, repl[3].root_}));
}

bool ScalarField::depends_on(int axis) const {
  return depends_node(*root_, axis);
}

bool ScalarField::is_structural_zero() const {
  return root_->kind == Node::k_const && root_->value == 0.0;
}

nlohmann::json ScalarField::to_json() const { return node_to_json(*root_); }

ScalarField ScalarField::from_json(const nlohmann::json& j) {
  return ScalarField(node_from_json(j));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_add({a.root_, b.root_}));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_add({a.root_, make_mul({make_const(-1.0), b.root_})}));
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_mul({a.root_, b.root_}));
}

ScalarField operator-(const ScalarField& a) {
  return ScalarField(make_mul({make_const(-1.0), a.root_}));
}

ScalarField sin(const ScalarField& a) {
  return ScalarField(make_unary(Node::k_sin, a.root_));
}
ScalarField cos(const ScalarField& a) {
  return ScalarField(make_unary(Node::k_cos, a.root_));
}
ScalarField exp(const ScalarField& a) {
  return ScalarField(make_unary(Node::k_exp, a.root_));
}
ScalarField gaussian(const ScalarField& a) {
  return ScalarField(make_unary(Node::k_gauss, a.root_));
}

}  // namespace degsol
