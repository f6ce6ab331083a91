#include "fatpoints/monomial_ideal.hpp"

#include <algorithm>

#include "fatpoints/errors.hpp"

namespace fatpoints {

namespace {

bool divides(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace

MonomialIdeal MonomialIdeal::full(unsigned nvars) {
  return MonomialIdeal(nvars, {MultiIndex(nvars, 0)});
}

MonomialIdeal MonomialIdeal::max_power(unsigned nvars, unsigned k) {
  if (k == 0) return full(nvars);
  if (nvars == 0) return MonomialIdeal(0, {});  // zero ideal of the field
  std::vector<MultiIndex> gens;
  for (const MultiIndex& e : monomial_basis(nvars - 1, k)) gens.push_back(e);
  return MonomialIdeal(nvars, std::move(gens));
}

MonomialIdeal::MonomialIdeal(unsigned nvars, std::vector<MultiIndex> gens)
    : nvars_(nvars) {
  for (const MultiIndex& g : gens)
    if (g.size() != nvars) throw Error("monomial ideal: arity mismatch");
  // keep only the minimal generators
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (const MultiIndex& g : gens) {
    bool redundant = false;
    for (const MultiIndex& h : gens)
      if (h != g && divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) gens_.push_back(g);
  }
}

bool MonomialIdeal::is_full() const {
  return gens_.size() == 1 && total_degree(gens_[0]) == 0;
}

bool MonomialIdeal::contains(const MultiIndex& mono) const {
  for (const MultiIndex& g : gens_)
    if (divides(g, mono)) return true;
  return false;
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
  for (const MultiIndex& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

bool MonomialIdeal::has_finite_colength() const {
  for (unsigned v = 0; v < nvars_; ++v) {
    bool pure = false;
    for (const MultiIndex& g : gens_) {
      bool only_v = true;
      for (unsigned u = 0; u < nvars_; ++u)
        if (u != v && g[u] != 0) only_v = false;
      if (only_v) {
        pure = true;
        break;
      }
    }
    if (!pure) return false;
  }
  return true;
}

std::vector<MultiIndex> MonomialIdeal::standard_monomials() const {
  if (!has_finite_colength())
    throw Error("monomial ideal has infinite colength");
  // bounding box from the minimal pure powers
  MultiIndex box(nvars_, 0);
  for (unsigned v = 0; v < nvars_; ++v) {
    unsigned best = ~0u;
    for (const MultiIndex& g : gens_) {
      bool only_v = true;
      for (unsigned u = 0; u < nvars_; ++u)
        if (u != v && g[u] != 0) only_v = false;
      if (only_v) best = std::min(best, g[v]);
    }
    box[v] = best;
  }
  std::vector<MultiIndex> out;
  MultiIndex cur(nvars_, 0);
  while (true) {
    if (!contains(cur)) out.push_back(cur);
    unsigned v = 0;
    while (v < nvars_ && cur[v] + 1 >= box[v]) {  // cur[v] ranges [0, box[v])
      cur[v] = 0;
      ++v;
    }
    if (v == nvars_) break;
    ++cur[v];
  }
  // order consistently with jet enumeration: by degree, then lex descending
  std::sort(out.begin(), out.end(), [](const MultiIndex& a,
                                       const MultiIndex& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

std::uint64_t MonomialIdeal::colength() const {
  return standard_monomials().size();
}

VgModel::VgModel(unsigned tangential_vars, std::vector<MonomialIdeal> layers)
    : nvars_(tangential_vars), layers_(std::move(layers)) {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].nvars() != nvars_)
      throw Error("vg model: layer arity mismatch");
    if (!layers_[i].has_finite_colength())
      throw Error("vg model: layer of infinite colength");
    if (i > 0 && !layers_[i].contains(layers_[i - 1]))
      throw Error("vg model: layers must be nested increasingly");
  }
}

VgModel VgModel::fat_point(unsigned m, unsigned tangential_vars) {
  if (m == 0) throw Error("fat point multiplicity must be positive");
  std::vector<MonomialIdeal> layers;
  for (unsigned j = 0; j < m; ++j)
    layers.push_back(MonomialIdeal::max_power(tangential_vars, m - j));
  return VgModel(tangential_vars, std::move(layers));
}

VgModel VgModel::simple_residue(unsigned m, unsigned tangential_vars) {
  if (m < 2) throw Error("simple residue needs multiplicity >= 2");
  return fat_point(m, tangential_vars).res_p(m - 1);
}

std::uint64_t VgModel::degree() const {
  std::uint64_t s = 0;
  for (const MonomialIdeal& l : layers_) s += l.colength();
  return s;
}

std::vector<MultiIndex> VgModel::standard_monomials() const {
  std::vector<MultiIndex> out;
  for (unsigned j = 0; j < height(); ++j) {
    for (const MultiIndex& t : layers_[j].standard_monomials()) {
      MultiIndex e = t;
      e.push_back(j);  // normal variable last
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [](const MultiIndex& a,
                                       const MultiIndex& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

VgModel VgModel::residual() const {
  if (empty()) throw Error("residual of an empty model");
  return res_p(0);
}

MonomialIdeal VgModel::tr_p(unsigned p) const {
  if (p >= height()) throw Error("tr_p: no such layer");
  return layers_[p];
}

VgModel VgModel::res_p(unsigned p) const {
  if (p >= height())
    throw Error("res_p: slicing a layer the model does not have");
  std::vector<MonomialIdeal> layers;
  for (unsigned j = 0; j < height(); ++j)
    if (j != p) layers.push_back(layers_[j]);
  // Dropping a middle slot keeps the nesting: I_{p-1} c I_p c I_{p+1}.
  return VgModel(nvars_, std::move(layers));
}

}  // namespace fatpoints
