#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bbx/matrix.hpp"

namespace bbx {

enum class Family { A, B, C, D };

// Central subgroup selector realizing the (P) convention: cosets are
// represented by arbitrary matrix representatives and equality is projective.
enum class Quotient { None, Center2, Full };

struct GroupSpec {
  Family family = Family::A;
  unsigned n = 1;  // Lie rank
  uint64_t p = 5;
  unsigned k = 1;
  Quotient quotient = Quotient::None;

  unsigned dim() const {
    switch (family) {
      case Family::A: return n + 1;
      case Family::B: return 2 * n + 1;
      case Family::C: return 2 * n;
      case Family::D: return 2 * n;
    }
    return 0;
  }

  // Compact grammar "SL:n:p:k", "PSL:...", "Sp:...", "PSp:...", "Omega:...",
  // "OmegaPlus:...", "POmegaPlus:...".
  static GroupSpec parse(const std::string& s);
  std::string str() const;
};

inline GroupSpec GroupSpec::parse(const std::string& s) {
  std::stringstream ss(s);
  std::string name, tok;
  std::vector<uint64_t> nums;
  if (!std::getline(ss, name, ':')) throw Precondition("bad group spec: " + s);
  while (std::getline(ss, tok, ':')) nums.push_back(std::stoull(tok));
  if (nums.size() != 3) throw Precondition("bad group spec: " + s);
  GroupSpec g;
  g.n = unsigned(nums[0]);
  g.p = nums[1];
  g.k = unsigned(nums[2]);
  if (name == "SL") {
    g.family = Family::A;
    g.quotient = Quotient::None;
  } else if (name == "PSL") {
    g.family = Family::A;
    g.quotient = Quotient::Full;
  } else if (name == "Sp") {
    g.family = Family::C;
    g.quotient = Quotient::None;
  } else if (name == "PSp") {
    g.family = Family::C;
    g.quotient = Quotient::Center2;
  } else if (name == "Omega") {
    g.family = Family::B;
    g.quotient = Quotient::None;
  } else if (name == "OmegaPlus") {
    g.family = Family::D;
    g.quotient = Quotient::None;
  } else if (name == "POmegaPlus") {
    g.family = Family::D;
    g.quotient = Quotient::Center2;
  } else {
    throw Precondition("unknown group family: " + name);
  }
  return g;
}

inline std::string GroupSpec::str() const {
  std::string name;
  switch (family) {
    case Family::A: name = quotient == Quotient::None ? "SL" : "PSL"; break;
    case Family::C: name = quotient == Quotient::None ? "Sp" : "PSp"; break;
    case Family::B: name = "Omega"; break;
    case Family::D:
      name = quotient == Quotient::None ? "OmegaPlus" : "POmegaPlus";
      break;
  }
  return name + ":" + std::to_string(n) + ":" + std::to_string(p) + ":" +
         std::to_string(k);
}

struct WhiteboxConfig {
  struct NodeCfg {
    std::vector<Matrix> gens;  // SL2 images of u(1), h(w), n(1)
    bool is_sl2 = true;        // false when the node maps onto PSL2
    std::optional<Matrix> z;   // central involution, when is_sl2
  };
  std::vector<NodeCfg> nodes;  // indexed 0..n (extended diagram)
  std::optional<Matrix> j;     // family C only
};

// White-box matrix backend: standard generators, block-embedded root SL2
// subgroups for the extended Dynkin diagram, exponent bound, projective
// equality, and test oracles.  Black-box algorithms never touch this class
// except through the BlackBox interface.
class MatGroup {
 public:
  struct Node {
    enum Kind { Plane, DualPair, Sym3 } kind = Plane;
    std::array<unsigned, 2> x{};  // Plane/DualPair: primary plane
    std::array<unsigned, 2> y{};  // DualPair: partner plane
    std::array<unsigned, 3> t{};  // Sym3 coordinates
    std::vector<unsigned> coords;
  };

  static MatGroup make(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  const Field& field() const { return F_; }
  unsigned dim() const { return spec_.dim(); }
  unsigned rank() const { return spec_.n; }

  // Standard generators: the Eq-style triple u(1), h(w), n(1) embedded at
  // every Dynkin node 1..n. Property (a) of the configuration gives
  // generation of the whole group.
  std::vector<Matrix> generators() const {
    std::vector<Matrix> out;
    for (unsigned l = 1; l <= spec_.n; ++l) {
      auto t = node_triple(l);
      out.insert(out.end(), t.begin(), t.end());
    }
    return out;
  }

  // Global exponent: E = p^ceil(log_p d) * lcm(q^i - 1 : 1 <= i <= d).
  Bigint exponent_bound() const {
    unsigned d = dim();
    Bigint e = 1;
    uint64_t pw = 1;
    while (pw < d) {
      pw *= spec_.p;
      e *= spec_.p;
    }
    Bigint lc = 1, qi = 1;
    for (unsigned i = 1; i <= d; ++i) {
      qi *= F_.q;
      lc = biglcm(lc, qi - 1);
    }
    return e * lc;
  }

  bool eq(const Matrix& a, const Matrix& b) const {
    if (a.dim != b.dim) throw Precondition("dimension mismatch");
    // b = lambda * a for an allowed central scalar lambda
    size_t entries = size_t(a.dim) * a.dim;
    for (size_t idx = 0; idx < entries; ++idx) {
      const uint64_t* pa = a.a.data() + idx * F_.k;
      const uint64_t* pb = b.a.data() + idx * F_.k;
      bool az = true, bz = true;
      for (unsigned i = 0; i < F_.k; ++i) {
        az &= pa[i] == 0;
        bz &= pb[i] == 0;
      }
      if (az != bz) return false;
      if (az) continue;
      Field::Elem ea(pa, pa + F_.k), eb(pb, pb + F_.k);
      Field::Elem lam = F_.mul(eb, F_.inv(ea));
      for (const auto& s : center_scalars_)
        if (s == lam) return mat::scalar_mul(F_, lam, a) == b;
      return false;
    }
    return true;  // both zero matrices; unreachable for group elements
  }

  bool is_identity(const Matrix& a) const {
    return eq(a, mat::identity(F_, a.dim));
  }

  // Canonical representative key of the projective class (hashing/closures).
  std::string canonical_key(const Matrix& m) const {
    std::string best = mat::key(F_, m);
    for (size_t i = 1; i < center_scalars_.size(); ++i) {
      std::string cand = mat::key(F_, mat::scalar_mul(F_, center_scalars_[i], m));
      if (cand < best) best = std::move(cand);
    }
    return best;
  }

  // SL2 -> G block embedding at an extended-diagram node.
  Matrix embed(unsigned node, const Matrix& a2) const {
    const Node& nd = nodes_.at(node);
    Matrix m = mat::identity(F_, dim());
    auto A = [&](unsigned r, unsigned c) { return mat::get(F_, a2, r, c); };
    switch (nd.kind) {
      case Node::Plane: {
        put_block(m, nd.x, {A(0, 0), A(0, 1), A(1, 0), A(1, 1)});
        break;
      }
      case Node::DualPair: {
        put_block(m, nd.x, {A(0, 0), A(0, 1), A(1, 0), A(1, 1)});
        // partner plane carries E A E with E = diag(1,-1)
        put_block(m, nd.y,
                  {A(0, 0), F_.neg(A(0, 1)), F_.neg(A(1, 0)), A(1, 1)});
        break;
      }
      case Node::Sym3: {
        // symmetric-square image in the basis (x^2/2, xy, -y^2/2)
        auto a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
        auto two = F_.from_int(2);
        std::array<Field::Elem, 9> e = {
            F_.mul(a, a),          F_.mul(two, F_.mul(a, b)),  F_.neg(F_.mul(b, b)),
            F_.mul(a, c),          F_.add(F_.mul(a, d), F_.mul(b, c)),
            F_.neg(F_.mul(b, d)),
            F_.neg(F_.mul(c, c)),  F_.neg(F_.mul(two, F_.mul(c, d))),
            F_.mul(d, d)};
        for (unsigned r = 0; r < 3; ++r)
          for (unsigned cidx = 0; cidx < 3; ++cidx)
            mat::set(F_, m, nd.t[r], nd.t[cidx], e[r * 3 + cidx]);
        break;
      }
    }
    return m;
  }

  std::array<Matrix, 3> node_triple(unsigned node) const {
    Field::Elem w = omega_;
    return {embed(node, mat::sl2_u(F_, F_.one())),
            embed(node, mat::sl2_h(F_, w)),
            embed(node, mat::sl2_n(F_, F_.one()))};
  }

  WhiteboxConfig ct_config() const {
    if (spec_.family == Family::A && spec_.n < 2)
      throw Precondition("extended configuration needs rank >= 2");
    WhiteboxConfig cfg;
    Matrix minusI2 = mat::scalar(F_, 2, F_.neg(F_.one()));
    for (unsigned l = 0; l <= spec_.n; ++l) {
      WhiteboxConfig::NodeCfg nc;
      auto t = node_triple(l);
      nc.gens.assign(t.begin(), t.end());
      Matrix z = embed(l, minusI2);
      nc.is_sl2 = !is_identity(z);
      if (nc.is_sl2) nc.z = z;
      cfg.nodes.push_back(std::move(nc));
    }
    if (spec_.family == Family::C) {
      if (F_.q % 4 != 1)
        throw Precondition("family C configuration needs q = 1 mod 4");
      // order-4 scalar pair: j = diag(lam,...,lam, lam^-1,...,lam^-1)
      Field::Elem lam = F_.pow(omega_, (F_.q - 1) / 4);
      Matrix j = mat::identity(F_, dim());
      for (unsigned i = 0; i < spec_.n; ++i) mat::set(F_, j, i, i, lam);
      Field::Elem lami = F_.inv(lam);
      for (unsigned i = spec_.n; i < dim(); ++i) mat::set(F_, j, i, i, lami);
      cfg.j = j;
    }
    return cfg;
  }

  // Extended Dynkin diagram adjacency.
  bool adjacent(unsigned a, unsigned b) const {
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    unsigned n = spec_.n;
    switch (spec_.family) {
      case Family::A:
        if (n == 1) return true;
        return (b == a + 1) || (a == 0 && b == n) || (a == 0 && b == 1);
      case Family::B:
        if (a == 0) return b == 2;
        return b == a + 1;
      case Family::C:
        return b == a + 1;
      case Family::D:
        if (a == 0) return b == 2;
        if (b == n) return a == n - 2;
        return b == a + 1;
    }
    return false;
  }

  const std::vector<unsigned>& node_coords(unsigned l) const {
    return nodes_.at(l).coords;
  }
  size_t node_count() const { return nodes_.size(); }

  // ---- white-box test oracles (never visible to black-box algorithms) ----

  bool oracle_is_unipotent(const Matrix& m) const {
    for (const auto& s : center_scalars_) {
      Matrix nm = mat::scalar_mul(F_, s, m);
      Matrix nil = mat::zero(F_, m.dim);
      bool ok = true;
      for (unsigned i = 0; i < m.dim && ok; ++i)
        for (unsigned j = 0; j < m.dim; ++j) {
          Field::Elem v = mat::get(F_, nm, i, j);
          if (i == j) v = F_.sub(v, F_.one());
          mat::set(F_, nil, i, j, v);
        }
      Matrix powed = mat::pow(F_, nil, m.dim);
      if (powed == mat::zero(F_, m.dim)) return true;
    }
    return false;
  }

  bool oracle_in_block(const Matrix& m, unsigned node) const {
    const auto& cs = nodes_.at(node).coords;
    auto inside = [&](unsigned i) {
      return std::find(cs.begin(), cs.end(), i) != cs.end();
    };
    for (const auto& s : center_scalars_) {
      Matrix nm = mat::scalar_mul(F_, s, m);
      bool ok = true;
      for (unsigned i = 0; i < m.dim && ok; ++i)
        for (unsigned j = 0; j < m.dim && ok; ++j) {
          if (inside(i) && inside(j)) continue;
          Field::Elem v = mat::get(F_, nm, i, j);
          if (i == j ? v != F_.one() : !F_.is_zero(v)) ok = false;
        }
      if (ok) return true;
    }
    return false;
  }

  bool oracle_is_toral(const Matrix& m) const {
    Matrix mp = mat::pow(F_, m, F_.q - 1);
    Field::Elem s = mat::get(F_, mp, 0, 0);
    return mp == mat::scalar(F_, m.dim, s);
  }

  bool preserves_form(const Matrix& m) const {
    if (!has_form_) return true;
    Matrix mt = mat::transpose(F_, m);
    return mat::mul(F_, mt, mat::mul(F_, gram_, m)) == gram_;
  }

  const Matrix& gram() const { return gram_; }
  bool has_form() const { return has_form_; }
  const Field::Elem& omega() const { return omega_; }
  const std::vector<Field::Elem>& center_scalars() const {
    return center_scalars_;
  }

  // |G| for the A family (and the classical formulas otherwise), used by the
  // enumeration oracle at tiny q.
  Bigint order_formula() const {
    const Bigint& q = F_.q;
    unsigned n = spec_.n;
    Bigint order = 0;
    switch (spec_.family) {
      case Family::A: {
        order = bigpow(q, n * (n + 1) / 2);
        Bigint qi = q;
        for (unsigned i = 2; i <= n + 1; ++i) {
          qi *= q;
          order *= qi - 1;
        }
        break;
      }
      case Family::C: {
        order = bigpow(q, n * n);
        Bigint q2i = 1;
        for (unsigned i = 1; i <= n; ++i) {
          q2i = bigpow(q, 2 * i);
          order *= q2i - 1;
        }
        break;
      }
      case Family::B: {
        order = bigpow(q, n * n);
        for (unsigned i = 1; i <= n; ++i) order *= bigpow(q, 2 * i) - 1;
        order /= 2;  // index of Omega in SO
        break;
      }
      case Family::D: {
        order = bigpow(q, n * (n - 1)) * (bigpow(q, n) - 1);
        for (unsigned i = 1; i + 1 <= n; ++i) order *= bigpow(q, 2 * i) - 1;
        order /= 2;
        break;
      }
    }
    return order / Bigint(center_scalars_.size());
  }

 private:
  GroupSpec spec_;
  Field F_;
  Field::Elem omega_;
  Matrix gram_;
  bool has_form_ = false;
  std::vector<Field::Elem> center_scalars_;
  std::vector<Node> nodes_;

  void put_block(Matrix& m, const std::array<unsigned, 2>& plane,
                 const std::array<Field::Elem, 4>& e) const {
    mat::set(F_, m, plane[0], plane[0], e[0]);
    mat::set(F_, m, plane[0], plane[1], e[1]);
    mat::set(F_, m, plane[1], plane[0], e[2]);
    mat::set(F_, m, plane[1], plane[1], e[3]);
  }

  static Node plane_node(unsigned a, unsigned b) {
    Node nd;
    nd.kind = Node::Plane;
    nd.x = {a, b};
    nd.coords = {a, b};
    return nd;
  }
  static Node dual_node(unsigned x1, unsigned x2, unsigned y1, unsigned y2) {
    Node nd;
    nd.kind = Node::DualPair;
    nd.x = {x1, x2};
    nd.y = {y1, y2};
    nd.coords = {x1, x2, y1, y2};
    return nd;
  }
  static Node sym3_node(unsigned a, unsigned b, unsigned c) {
    Node nd;
    nd.kind = Node::Sym3;
    nd.t = {a, b, c};
    nd.coords = {a, b, c};
    return nd;
  }

  friend MatGroup matgroup_make_impl(const GroupSpec&);
};

inline MatGroup matgroup_make_impl(const GroupSpec& spec) {
  MatGroup g;
  g.spec_ = spec;
  unsigned n = spec.n;
  switch (spec.family) {
    case Family::A:
      if (n < 1) throw Precondition("family A needs n >= 1");
      break;
    case Family::B:
      if (n < 3) throw Precondition("family B needs n >= 3");
      break;
    case Family::C:
      if (n < 2) throw Precondition("family C needs n >= 2");
      break;
    case Family::D:
      if (n < 4) throw Precondition("family D needs n >= 4");
      break;
  }
  g.F_ = Field::make(spec.p, spec.k);
  if (g.F_.q <= 3) throw Precondition("q > 3 required");
  g.omega_ = g.F_.primitive_element();
  const unsigned d = spec.dim();

  // Standard split forms; block embeddings are literal against these.
  if (spec.family != Family::A) {
    g.has_form_ = true;
    g.gram_ = mat::zero(g.F_, d);
    if (spec.family == Family::C) {
      for (unsigned i = 0; i < n; ++i) {
        mat::set(g.F_, g.gram_, i, d - 1 - i, g.F_.one());
        mat::set(g.F_, g.gram_, d - 1 - i, i, g.F_.neg(g.F_.one()));
      }
    } else {
      for (unsigned i = 0; i < d; ++i)
        mat::set(g.F_, g.gram_, i, d - 1 - i, g.F_.one());
      if (spec.family == Family::B)
        mat::set(g.F_, g.gram_, n, n, g.F_.from_int(2));
    }
  }

  // Allowed central scalars for the projective quotient.
  g.center_scalars_.push_back(g.F_.one());
  Field::Elem minus1 = g.F_.neg(g.F_.one());
  switch (spec.quotient) {
    case Quotient::None:
      break;
    case Quotient::Center2: {
      bool ok = false;
      if (spec.family == Family::A) ok = (d % 2 == 0);
      if (spec.family == Family::C) ok = true;
      if (spec.family == Family::D) ok = (g.F_.q % 4 == 1) || (n % 2 == 0);
      if (!ok) throw Precondition("-I is not a central element of this group");
      g.center_scalars_.push_back(minus1);
      break;
    }
    case Quotient::Full: {
      if (spec.family != Family::A)
        throw Precondition("full-center quotient only for family A");
      // all scalars lambda with lambda^d = 1
      Bigint m = g.F_.q - 1;
      Bigint e = boost::multiprecision::gcd(Bigint(d), m);
      Field::Elem gen = g.F_.pow(g.omega_, m / e);
      Field::Elem cur = gen;
      for (Bigint i = 1; i < e; ++i) {
        g.center_scalars_.push_back(cur);
        cur = g.F_.mul(cur, gen);
      }
      break;
    }
  }

  // Extended-diagram node embeddings (0-indexed coordinates).
  g.nodes_.clear();
  switch (spec.family) {
    case Family::A: {
      g.nodes_.push_back(MatGroup::plane_node(0, d - 1));  // lowest root
      for (unsigned l = 1; l <= n; ++l)
        g.nodes_.push_back(MatGroup::plane_node(l - 1, l));
      break;
    }
    case Family::C: {
      g.nodes_.push_back(MatGroup::plane_node(0, d - 1));
      for (unsigned l = 1; l + 1 <= n; ++l)
        g.nodes_.push_back(
            MatGroup::dual_node(l - 1, l, d - 1 - l, d - l));
      g.nodes_.push_back(MatGroup::plane_node(n - 1, n));
      break;
    }
    case Family::B: {
      g.nodes_.push_back(MatGroup::dual_node(0, d - 2, 1, d - 1));
      for (unsigned l = 1; l + 1 <= n; ++l)
        g.nodes_.push_back(
            MatGroup::dual_node(l - 1, l, d - 1 - l, d - l));
      g.nodes_.push_back(MatGroup::sym3_node(n - 1, n, n + 1));
      break;
    }
    case Family::D: {
      g.nodes_.push_back(MatGroup::dual_node(0, d - 2, 1, d - 1));
      for (unsigned l = 1; l + 1 <= n; ++l)
        g.nodes_.push_back(
            MatGroup::dual_node(l - 1, l, d - 1 - l, d - l));
      g.nodes_.push_back(MatGroup::dual_node(n - 2, n, n - 1, n + 1));
      break;
    }
  }
  return g;
}

inline MatGroup MatGroup::make(const GroupSpec& spec) {
  return matgroup_make_impl(spec);
}

}  // namespace bbx
