#pragma once
// Finite equivariant ordered-simplicial models of a group action and the
// cochain complexes computing ordinary, compactly supported and interior
// cohomology with coefficients in a representation.

#include "dualis/groups.hpp"

#include <map>
#include <memory>
#include <set>

namespace dualis {

enum class Variant { ordinary, compact, interior };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::ordinary: return "ordinary";
    case Variant::compact: return "compact";
    case Variant::interior: return "interior";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "ordinary") return Variant::ordinary;
  if (s == "compact") return Variant::compact;
  if (s == "interior") return Variant::interior;
  throw std::invalid_argument("unknown cohomology variant '" + s + "'");
}

/// face_i(sigma) = attach . target
struct Face {
  GroupElement attach;
  std::size_t target = 0;
};

/// One G-orbit of ordered simplices, described through a representative.
struct OrbitCell {
  std::size_t id = 0;
  int dim = 0;
  std::vector<long> levels;                // strictly increasing vertex levels
  std::vector<GroupElement> stabilizer;    // exhaustive, fixes the cell pointwise
  std::vector<Face> faces;                 // dim + 1 entries (none for vertices)
  bool at_infinity = false;
  int orientation = 0;                     // +-1 on top cells
  std::string label;
};

struct GroupContext {
  std::string name;
  bool projective = false;
  std::size_t geom_dim = 1;
  std::function<bool(const GroupElement&)> contains;  // may be empty for deserialized complexes
};

class EquivariantPairComplex {
 public:
  EquivariantPairComplex() = default;
  EquivariantPairComplex(int dimension, std::vector<OrbitCell> cells, GroupContext group)
      : dimension_(dimension), cells_(std::move(cells)), group_(std::move(group)) {
    if (dimension_ < 0) throw std::invalid_argument("complex dimension must be non-negative");
    by_dim_.assign(static_cast<std::size_t>(dimension_) + 1, {});
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const auto& c = cells_[i];
      if (c.id != i) throw std::invalid_argument("cell ids must equal their positions");
      if (c.dim < 0 || c.dim > dimension_) throw std::invalid_argument("cell " + std::to_string(i) + " has bad dimension");
      by_dim_[static_cast<std::size_t>(c.dim)].push_back(i);
    }
  }

  int dimension() const { return dimension_; }
  const std::vector<OrbitCell>& cells() const { return cells_; }
  const OrbitCell& cell(std::size_t id) const { return cells_.at(id); }
  const GroupContext& group() const { return group_; }
  std::size_t size() const { return cells_.size(); }

  const std::vector<std::size_t>& cells_of_dim(int d) const {
    static const std::vector<std::size_t> empty;
    if (d < 0 || d > dimension_) return empty;
    return by_dim_[static_cast<std::size_t>(d)];
  }

  GroupElement identity() const { return GroupElement::identity(group_.geom_dim, group_.projective); }

  bool stabilizes(std::size_t cell, const GroupElement& x) const {
    const auto& st = cells_.at(cell).stabilizer;
    return std::find(st.begin(), st.end(), x) != st.end();
  }

  /// Canonical representative of the coset a . Stab(cell).
  GroupElement canonical_attach(const GroupElement& a, std::size_t cell) const {
    const auto& st = cells_.at(cell).stabilizer;
    if (st.size() <= 1) return a;
    GroupElement best = a * st.front();
    for (std::size_t k = 1; k < st.size(); ++k) {
      GroupElement c = a * st[k];
      if (c < best) best = c;
    }
    return best;
  }

  bool same_cell(const GroupElement& a, std::size_t s, const GroupElement& b, std::size_t t) const {
    return s == t && stabilizes(s, a.inverse() * b);
  }

 private:
  int dimension_ = 0;
  std::vector<OrbitCell> cells_;
  GroupContext group_;
  std::vector<std::vector<std::size_t>> by_dim_;
};

// ---------------------------------------------------------------------------
// Chains: finite rational combinations of translated orbit representatives.

struct ChainTerm {
  Scalar coeff;
  GroupElement attach;
  std::size_t cell = 0;
};
using Chain = std::vector<ChainTerm>;
using CanonicalChain = std::map<std::pair<std::size_t, GroupElement>, Scalar>;

inline CanonicalChain canonical_chain(const EquivariantPairComplex& k, const Chain& c) {
  CanonicalChain out;
  for (const auto& t : c) {
    if (t.coeff == 0) continue;
    auto key = std::make_pair(t.cell, k.canonical_attach(t.attach, t.cell));
    auto [it, inserted] = out.emplace(key, t.coeff);
    if (!inserted) {
      it->second += t.coeff;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

inline Chain translate(const GroupElement& h, Chain c) {
  for (auto& t : c) t.attach = h * t.attach;
  return c;
}

inline Chain boundary(const EquivariantPairComplex& k, const Chain& c) {
  Chain out;
  for (const auto& t : c) {
    const auto& cell = k.cell(t.cell);
    for (std::size_t i = 0; i < cell.faces.size(); ++i) {
      Scalar sign = (i % 2 == 0) ? 1 : -1;
      out.push_back({t.coeff * sign, t.attach * cell.faces[i].attach, cell.faces[i].target});
    }
  }
  return out;
}

inline Scalar augmentation(const Chain& c) {
  Scalar s = 0;
  for (const auto& t : c) s += t.coeff;
  return s;
}

inline std::string describe(const EquivariantPairComplex& k, const CanonicalChain& c) {
  std::string s;
  for (const auto& [key, coeff] : c) {
    if (!s.empty()) s += " + ";
    s += to_string(coeff) + "*" + key.second.str() + "." + k.cell(key.first).label + "#" + std::to_string(key.first);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Cochains.

/// Hom_G(C_m, E): one value in E^{G_sigma} per orbit cell of degree m (cells at
/// infinity are excluded when `relative`).
struct CochainSpace {
  int degree = 0;
  bool relative = false;
  std::size_t rep_dim = 1;
  std::vector<std::size_t> cells;
  std::vector<std::size_t> offsets;
  std::vector<Subspace> stalks;
  std::vector<Matrix> embeddings;   // rep_dim x stalk dim
  std::vector<long> position_of;    // indexed by cell id; -1 when absent
  std::size_t dim = 0;

  bool has(std::size_t cell) const { return cell < position_of.size() && position_of[cell] >= 0; }
  std::size_t pos(std::size_t cell) const {
    if (!has(cell)) throw std::out_of_range("cell not in cochain space");
    return static_cast<std::size_t>(position_of[cell]);
  }
  std::size_t stalk_dim(std::size_t p) const { return stalks[p].dim(); }

  /// Value of the cochain on the representative cell, in E coordinates.
  Vector value(const Vector& coords, std::size_t cell) const {
    if (!has(cell)) return zero_vector(rep_dim);
    std::size_t p = pos(cell);
    Vector c(coords.begin() + static_cast<std::ptrdiff_t>(offsets[p]),
             coords.begin() + static_cast<std::ptrdiff_t>(offsets[p] + stalk_dim(p)));
    return stalks[p].combine(c);
  }

  void set_value(Vector& coords, std::size_t cell, const Vector& e) const {
    std::size_t p = pos(cell);
    if (!stalks[p].contains(e)) throw InvariantError("value is not invariant under the cell stabilizer");
    Vector c = stalks[p].coordinates(e);
    for (std::size_t i = 0; i < c.size(); ++i) coords[offsets[p] + i] = c[i];
  }
};

inline CochainSpace cochain_space(const EquivariantPairComplex& k, const Representation& rep, int m, bool relative) {
  CochainSpace s;
  s.degree = m;
  s.relative = relative;
  s.rep_dim = rep.dim;
  s.position_of.assign(k.size(), -1);
  std::map<std::vector<GroupElement>, std::size_t> stalk_cache;
  for (std::size_t id : k.cells_of_dim(m)) {
    const auto& c = k.cell(id);
    if (relative && c.at_infinity) continue;
    s.position_of[id] = static_cast<long>(s.cells.size());
    s.cells.push_back(id);
    s.offsets.push_back(s.dim);
    auto it = stalk_cache.find(c.stabilizer);
    if (it == stalk_cache.end()) {
      s.stalks.push_back(invariants_subspace(rep, c.stabilizer));
      stalk_cache.emplace(c.stabilizer, s.stalks.size() - 1);
    } else {
      s.stalks.push_back(s.stalks[it->second]);
    }
    s.embeddings.push_back(s.stalks.back().embedding());
    s.dim += s.stalks.back().dim();
  }
  return s;
}

/// Accumulates a linear map between cochain spaces given cell-by-cell:
/// value_target(t) += coeff * value_source(s).
class CochainMapBuilder {
 public:
  CochainMapBuilder(const CochainSpace& target, const CochainSpace& source)
      : target_(target), source_(source), out_(target.dim, source.dim) {}

  /// Returns false (and adds nothing) when the source cell is not in the
  /// source space, i.e. a relative cochain that vanishes there.
  bool add(std::size_t target_cell, const Matrix& coeff, std::size_t source_cell, bool check = false) {
    if (!source_.has(source_cell)) return false;
    std::size_t tp = target_.pos(target_cell), sp = source_.pos(source_cell);
    Matrix full = coeff * source_.embeddings[sp];
    if (check) {
      for (std::size_t j = 0; j < full.cols(); ++j)
        if (!target_.stalks[tp].contains(full.col(j)))
          throw InvariantError("map does not land in the stabilizer invariants of cell " + std::to_string(target_cell));
    }
    const auto& piv = target_.stalks[tp].pivots;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t j = 0; j < full.cols(); ++j) {
        const Scalar& x = full(piv[r], j);
        if (x != 0) out_(target_.offsets[tp] + r, source_.offsets[sp] + j) += x;
      }
    return true;
  }

  Matrix take() { return std::move(out_); }

 private:
  const CochainSpace& target_;
  const CochainSpace& source_;
  Matrix out_;
};

/// (delta f)(tau) = sum_i (-1)^i rho(attach_i) f(target_i), C^m -> C^{m+1}.
inline Matrix coboundary_between(const EquivariantPairComplex& k, const Representation& rep, const CochainSpace& from,
                                 const CochainSpace& to, bool check = false) {
  CochainMapBuilder b(to, from);
  for (std::size_t tau : to.cells) {
    const auto& cell = k.cell(tau);
    for (std::size_t i = 0; i < cell.faces.size(); ++i) {
      const auto& f = cell.faces[i];
      Matrix coeff = rep_evaluate(rep, f.attach);
      if (i % 2 == 1) coeff *= Scalar(-1);
      b.add(tau, coeff, f.target, check);
    }
  }
  return b.take();
}

inline Matrix coboundary_matrix(const EquivariantPairComplex& k, const Representation& rep, int m, bool relative) {
  return coboundary_between(k, rep, cochain_space(k, rep, m, relative), cochain_space(k, rep, m + 1, relative));
}

/// A cochain together with its degree and support type.
struct Cochain {
  int degree = 0;
  bool relative = false;
  Vector coords;
};

/// Evaluates a cochain on an arbitrary chain of translated cells.
inline Vector evaluate_on_chain(const Representation& rep, const CochainSpace& space, const Vector& coords,
                                const Chain& chain) {
  Vector out = zero_vector(rep.dim);
  for (const auto& t : chain) {
    if (!space.has(t.cell)) continue;
    Vector v = rep_evaluate(rep, t.attach) * space.value(coords, t.cell);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.coeff * v[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cohomology.

struct CohomologyBasis {
  int degree = 0;
  Variant variant = Variant::ordinary;
  /// Cocycles: absolute coordinates for ordinary; relative coordinates for
  /// compact and for interior (compactly supported lifts).
  std::vector<Vector> representatives;
  /// Sends a cocycle to its class coordinates.  For interior classes the
  /// input is an ordinary (absolute) cocycle lying in the interior image.
  Matrix coordinate_map;
  std::size_t dim() const { return representatives.size(); }
};

/// All cochain spaces, coboundaries and cohomology bases of (K, rep).
class Cohomology {
 public:
  Cohomology(EquivariantPairComplex k, Representation rep)
      : k_(std::make_shared<const EquivariantPairComplex>(std::move(k))), rep_(std::move(rep)) {
    build();
  }
  Cohomology(std::shared_ptr<const EquivariantPairComplex> k, Representation rep) : k_(std::move(k)), rep_(std::move(rep)) {
    build();
  }

  const EquivariantPairComplex& complex() const { return *k_; }
  std::shared_ptr<const EquivariantPairComplex> complex_ptr() const { return k_; }
  const Representation& rep() const { return rep_; }
  int dimension() const { return k_->dimension(); }

  const CochainSpace& space(int m, bool relative) const { return spaces_[rel(relative)].at(idx(m)); }
  /// delta: C^m -> C^{m+1}, for -1 <= m <= n.
  const Matrix& coboundary(int m, bool relative) const { return deltas_[rel(relative)].at(idx(m)); }
  const CohomologyBasis& basis(int m, Variant v) const { return bases_[static_cast<int>(v)].at(idx(m)); }
  /// Matrix of H^m_c -> H^m on the chosen bases.
  const Matrix& restriction(int m) const { return restrictions_.at(idx(m)); }

  std::vector<std::size_t> dims(Variant v) const {
    std::vector<std::size_t> d;
    for (int m = 0; m <= dimension(); ++m) d.push_back(basis(m, v).dim());
    return d;
  }

  /// Extends a relative cochain by zero on the cells at infinity.
  Vector extend_by_zero(int m, const Vector& relative) const {
    const auto& r = space(m, true);
    const auto& a = space(m, false);
    Vector out = zero_vector(a.dim);
    for (std::size_t p = 0; p < r.cells.size(); ++p) {
      std::size_t q = a.pos(r.cells[p]);
      for (std::size_t i = 0; i < r.stalk_dim(p); ++i) out[a.offsets[q] + i] = relative[r.offsets[p] + i];
    }
    return out;
  }

  /// Restricts an absolute cochain to the cells not at infinity.
  Vector restrict_to_relative(int m, const Vector& absolute) const {
    const auto& r = space(m, true);
    const auto& a = space(m, false);
    Vector out = zero_vector(r.dim);
    for (std::size_t p = 0; p < r.cells.size(); ++p) {
      std::size_t q = a.pos(r.cells[p]);
      for (std::size_t i = 0; i < r.stalk_dim(p); ++i) out[r.offsets[p] + i] = absolute[a.offsets[q] + i];
    }
    return out;
  }

  bool is_cocycle(int m, bool relative, const Vector& c) const { return is_zero(coboundary(m, relative) * c); }

  /// Class coordinates of a cocycle; the cocycle lives in the relative space
  /// for `compact`, in the absolute space otherwise.
  Vector classify(int m, Variant v, const Vector& cocycle) const {
    bool relative = v == Variant::compact;
    if (!is_cocycle(m, relative, cocycle))
      throw InvariantError(std::string("classify: not a cocycle in degree ") + std::to_string(m) + " (" +
                           variant_name(v) + ")");
    const auto& b = basis(m, v);
    Vector c = b.coordinate_map * cocycle;
    if (v == Variant::interior) {
      Vector back = zero_vector(basis(m, Variant::ordinary).dim());
      const Matrix& r = restriction(m);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t h = 0; h < back.size(); ++h) back[h] += r(h, interior_columns_.at(idx(m))[i]) * c[i];
      if (back != classify(m, Variant::ordinary, cocycle))
        throw InvariantError("classify: class is not in the interior image");
    }
    return c;
  }

  /// Absolute cochain of the i-th representative (interior/compact classes are
  /// extended by zero).
  Vector absolute_representative(int m, Variant v, std::size_t i) const {
    const auto& r = basis(m, v).representatives.at(i);
    return v == Variant::ordinary ? r : extend_by_zero(m, r);
  }

  /// Columns of the restriction matrix selected as the interior basis.
  const std::vector<std::size_t>& interior_columns(int m) const { return interior_columns_.at(idx(m)); }

 private:
  static std::size_t rel(bool relative) { return relative ? 1 : 0; }
  std::size_t idx(int m) const {
    if (m < -1 || m > dimension() + 1) throw std::out_of_range("degree out of range");
    return static_cast<std::size_t>(m + 1);
  }

  void build() {
    const int n = dimension();
    for (std::size_t r = 0; r < 2; ++r) {
      for (int m = -1; m <= n + 1; ++m) spaces_[r].push_back(cochain_space(*k_, rep_, m, r == 1));
      for (int m = -1; m <= n + 1; ++m) {
        const auto& from = spaces_[r][static_cast<std::size_t>(m + 1)];
        if (m == n + 1) {
          deltas_[r].push_back(Matrix(0, from.dim));
        } else {
          deltas_[r].push_back(coboundary_between(*k_, rep_, from, spaces_[r][static_cast<std::size_t>(m + 2)]));
        }
      }
    }
    for (auto& b : bases_) b.resize(static_cast<std::size_t>(n + 3));
    restrictions_.resize(static_cast<std::size_t>(n + 3));
    interior_columns_.resize(static_cast<std::size_t>(n + 3));
    for (int m = -1; m <= n + 1; ++m) {
      for (bool relative : {false, true}) {
        Variant v = relative ? Variant::compact : Variant::ordinary;
        const auto& sp = space(m, relative);
        Subspace z = deltas_[rel(relative)][idx(m)].rows() == 0 ? Subspace::whole(sp.dim)
                                                                : kernel_basis(coboundary(m, relative));
        Subspace bd = m <= -1 ? Subspace::from_spanning_rows(Matrix(0, sp.dim), sp.dim)
                              : image_basis(coboundary(m - 1, relative));
        Quotient q = quotient_space(z, bd);
        auto& b = bases_[static_cast<int>(v)][idx(m)];
        b.degree = m;
        b.variant = v;
        b.representatives = q.representatives.row_list();
        b.coordinate_map = q.projection;
      }
      const auto& comp = basis(m, Variant::compact);
      const auto& ord = basis(m, Variant::ordinary);
      Matrix r(ord.dim(), comp.dim());
      for (std::size_t j = 0; j < comp.dim(); ++j) {
        Vector y = ord.coordinate_map * extend_by_zero(m, comp.representatives[j]);
        for (std::size_t i = 0; i < y.size(); ++i) r(i, j) = y[i];
      }
      restrictions_[idx(m)] = r;

      auto& inter = bases_[static_cast<int>(Variant::interior)][idx(m)];
      inter.degree = m;
      inter.variant = Variant::interior;
      auto piv = rref_reduced(r).second;
      interior_columns_[idx(m)] = piv;
      for (auto j : piv) inter.representatives.push_back(comp.representatives[j]);
      if (piv.empty()) {
        inter.coordinate_map = Matrix(0, space(m, false).dim);
      } else {
        Matrix rp = r.select_columns(piv);
        auto rows = rref_reduced(rp.transpose()).second;
        Matrix left = inverse(rp.select_rows(rows));
        Matrix select(rows.size(), r.rows());
        for (std::size_t i = 0; i < rows.size(); ++i) select(i, rows[i]) = 1;
        inter.coordinate_map = left * select * ord.coordinate_map;
      }
    }
  }

  std::shared_ptr<const EquivariantPairComplex> k_;
  Representation rep_;
  std::vector<CochainSpace> spaces_[2];
  std::vector<Matrix> deltas_[2];
  std::vector<CohomologyBasis> bases_[3];
  std::vector<Matrix> restrictions_;
  std::vector<std::vector<std::size_t>> interior_columns_;
};

inline CohomologyBasis cohomology(const EquivariantPairComplex& k, const Representation& rep, int m, Variant v) {
  return Cohomology(k, rep).basis(m, v);
}

inline Matrix restriction_map(const EquivariantPairComplex& k, const Representation& rep, int m) {
  return Cohomology(k, rep).restriction(m);
}

// ---------------------------------------------------------------------------
// Validation.

/// Checks every structural axiom of the model and, for `rep`, that the
/// coboundary lands in stabilizer invariants and squares to zero.
inline CheckResult validate_complex(const EquivariantPairComplex& k, const Representation& rep) {
  CheckResult res{"validate_complex", true, {}};
  const int n = k.dimension();
  auto where = [&](std::size_t id) { return "cell " + std::to_string(id) + " (" + k.cell(id).label + ")"; };
  bool shape_ok = true;  // face counts, targets and dimensions; later checks rely on these

  for (const auto& c : k.cells()) {
    const std::size_t expect_faces = c.dim == 0 ? 0 : static_cast<std::size_t>(c.dim) + 1;
    if (c.faces.size() != expect_faces) {
      res.fail(where(c.id) + ": wrong number of faces");
      shape_ok = false;
      continue;
    }
    if (c.levels.size() != static_cast<std::size_t>(c.dim) + 1) res.fail(where(c.id) + ": wrong level count");
    for (std::size_t i = 1; i < c.levels.size(); ++i)
      if (c.levels[i] <= c.levels[i - 1]) res.fail(where(c.id) + ": levels not strictly increasing");
    if (!is_finite_subgroup(c.stabilizer)) res.fail(where(c.id) + ": stabilizer is not a finite subgroup");
    if ((c.dim == n || c.dim == n - 1) && c.stabilizer.size() != 1)
      res.fail(where(c.id) + ": cell of codimension <= 1 has nontrivial stabilizer");
    if (k.group().contains) {
      for (const auto& s : c.stabilizer)
        if (!k.group().contains(s)) res.fail(where(c.id) + ": stabilizer element " + s.str() + " not in G");
    }
    if (c.dim == n) {
      if (c.at_infinity) res.fail(where(c.id) + ": top cell marked at infinity");
      if (c.orientation != 1 && c.orientation != -1) res.fail(where(c.id) + ": top cell lacks orientation");
    }
    for (std::size_t i = 0; i < c.faces.size(); ++i) {
      const auto& f = c.faces[i];
      if (f.target >= k.size()) {
        res.fail(where(c.id) + ": face " + std::to_string(i) + " has unknown target");
        shape_ok = false;
        continue;
      }
      const auto& t = k.cell(f.target);
      if (t.dim != c.dim - 1) {
        res.fail(where(c.id) + ": face " + std::to_string(i) + " has wrong dimension");
        shape_ok = false;
      }
      if (k.group().contains && !k.group().contains(f.attach))
        res.fail(where(c.id) + ": face attach " + f.attach.str() + " not in G");
      if (c.at_infinity && !t.at_infinity) res.fail(where(c.id) + ": face of a cell at infinity is not at infinity");
      // Levels of the face are the parent's with entry i removed, up to a shift.
      if (t.levels.size() + 1 == c.levels.size()) {
        std::vector<long> expect = c.levels;
        expect.erase(expect.begin() + static_cast<std::ptrdiff_t>(i));
        long shift = t.levels.empty() ? 0 : t.levels[0] - expect[0];
        for (std::size_t j = 0; j < expect.size(); ++j)
          if (t.levels[j] - expect[j] != shift) {
            res.fail(where(c.id) + ": face " + std::to_string(i) + " does not preserve the level order");
            break;
          }
      }
      // Stabilizer elements must fix the face: a^{-1} s a in Stab(target).
      for (const auto& s : c.stabilizer)
        if (!k.stabilizes(f.target, f.attach.inverse() * s * f.attach))
          res.fail(where(c.id) + ": stabilizer element " + s.str() + " moves face " + std::to_string(i));
    }
  }
  if (!shape_ok) return res;

  // Simplicial identities d_i d_j = d_{j-1} d_i for i < j.
  for (const auto& c : k.cells()) {
    if (c.dim < 2) continue;
    for (std::size_t j = 1; j < c.faces.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const auto& fj = c.faces[j];
        const auto& fi = c.faces[i];
        const auto& a = k.cell(fj.target).faces[i];
        const auto& b = k.cell(fi.target).faces[j - 1];
        if (!k.same_cell(fj.attach * a.attach, a.target, fi.attach * b.attach, b.target))
          res.fail(where(c.id) + ": simplicial identity fails for (i, j) = (" + std::to_string(i) + ", " +
                   std::to_string(j) + ")");
      }
  }

  // Boundary of boundary vanishes as a chain.
  for (const auto& c : k.cells()) {
    if (c.dim < 2) continue;
    Chain single{{Scalar(1), k.identity(), c.id}};
    auto dd = canonical_chain(k, boundary(k, boundary(k, single)));
    if (!dd.empty()) res.fail(where(c.id) + ": boundary of boundary = " + describe(k, dd));
  }

  int infinity_dim = -1;
  for (const auto& c : k.cells())
    if (c.at_infinity) infinity_dim = std::max(infinity_dim, c.dim);
  if (infinity_dim > n - 1) res.fail("cells at infinity reach the top dimension");

  // Coefficient-level checks.
  if (!res.pass) return res;
  try {
    for (bool relative : {false, true}) {
      std::vector<Matrix> deltas;
      for (int m = 0; m < n; ++m)
        deltas.push_back(coboundary_between(k, rep, cochain_space(k, rep, m, relative),
                                            cochain_space(k, rep, m + 1, relative), true));
      for (int m = 0; m + 1 < n; ++m) {
        Matrix dd = deltas[static_cast<std::size_t>(m + 1)] * deltas[static_cast<std::size_t>(m)];
        if (!dd.is_zero())
          res.fail(std::string("delta^") + std::to_string(m + 1) + " . delta^" + std::to_string(m) + " != 0 (" +
                   (relative ? "relative" : "absolute") + ", " + rep.name + ")");
      }
    }
  } catch (const std::exception& e) {
    res.fail(std::string("coefficient check: ") + e.what());
  }
  return res;
}

}  // namespace dualis
