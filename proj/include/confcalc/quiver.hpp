#ifndef CONFCALC_QUIVER_HPP
#define CONFCALC_QUIVER_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/error.hpp"
#include "confcalc/matrix.hpp"

namespace confcalc {

struct Arrow {
  std::string name;
  std::string from, to;
  bool operator==(const Arrow& o) const {
    return name == o.name && from == o.from && to == o.to;
  }
};

/// One term of a relation element: coefficient times a path.  Paths are
/// arrow-name sequences in traversal order; the induced linear map is the
/// product of the arrow matrices in reverse order.
struct PathTerm {
  long long coeff = 1;
  std::vector<std::string> path;
  bool operator==(const PathTerm& o) const {
    return coeff == o.coeff && path == o.path;
  }
};

using Relation = std::vector<PathTerm>;

/// Quiver with relations.  Each relation is a linear combination of
/// composable paths of length >= 2 sharing a start and an end vertex.
class Quiver {
 public:
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
         std::vector<Relation> relations = {})
      : vertices_(std::move(vertices)),
        arrows_(std::move(arrows)),
        relations_(std::move(relations)) {
    for (size_t i = 0; i < vertices_.size(); ++i)
      for (size_t j = i + 1; j < vertices_.size(); ++j)
        if (vertices_[i] == vertices_[j])
          fail(Errc::BadQuiver, "duplicate vertex " + vertices_[i]);
    for (size_t i = 0; i < arrows_.size(); ++i) {
      vertex_index(arrows_[i].from);
      vertex_index(arrows_[i].to);
      for (size_t j = i + 1; j < arrows_.size(); ++j)
        if (arrows_[i].name == arrows_[j].name)
          fail(Errc::BadQuiver, "duplicate arrow " + arrows_[i].name);
    }
    for (const auto& rel : relations_) {
      if (rel.empty()) fail(Errc::BadQuiver, "empty relation");
      int start = -1, end = -1;
      for (const auto& term : rel) {
        if (term.path.size() < 2)
          fail(Errc::BadQuiver, "relation path shorter than 2 arrows");
        int at = -1;
        for (size_t k = 0; k < term.path.size(); ++k) {
          const Arrow& a = arrow(term.path[k]);
          int b = vertex_index(a.from);
          if (k == 0) {
            if (start < 0) start = b;
            if (b != start) fail(Errc::BadQuiver, "relation start mismatch");
          } else if (b != at) {
            fail(Errc::BadQuiver, "non-composable relation path");
          }
          at = vertex_index(a.to);
        }
        if (end < 0) end = at;
        if (at != end) fail(Errc::BadQuiver, "relation end mismatch");
      }
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Relation>& relations() const { return relations_; }

  int vertex_index(const std::string& v) const {
    for (size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == v) return static_cast<int>(i);
    fail(Errc::BadQuiver, "unknown vertex " + v);
  }

  int arrow_index(const std::string& name) const {
    for (size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == name) return static_cast<int>(i);
    fail(Errc::BadQuiver, "unknown arrow " + name);
  }

  const Arrow& arrow(const std::string& name) const {
    return arrows_[arrow_index(name)];
  }

  bool operator==(const Quiver& o) const {
    return vertices_ == o.vertices_ && arrows_ == o.arrows_ &&
           relations_ == o.relations_;
  }
  bool operator!=(const Quiver& o) const { return !(*this == o); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<Relation> relations_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

inline bool same_quiver(const QuiverPtr& a, const QuiverPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Representation (X, rho): a vector space dimension per vertex and a
/// matrix per arrow, with every quiver relation evaluating to zero.
/// Construction validates shapes and relations, so an invalid Rep cannot
/// exist.
class Rep {
 public:
  Rep(QuiverPtr quiver, FieldSpec field, std::vector<int> dims,
      std::vector<Matrix> mats)
      : quiver_(std::move(quiver)),
        field_(field),
        dims_(std::move(dims)),
        mats_(std::move(mats)) {
    validate();
  }

  static Rep zero(QuiverPtr quiver, FieldSpec field) {
    std::vector<int> dims(quiver->vertices().size(), 0);
    std::vector<Matrix> mats;
    for (const auto& a : quiver->arrows()) {
      (void)a;
      mats.emplace_back(field, 0, 0);
    }
    return Rep(std::move(quiver), field, std::move(dims), std::move(mats));
  }

  const QuiverPtr& quiver() const { return quiver_; }
  const FieldSpec& field() const { return field_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int v) const { return dims_[v]; }
  int total_dim() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
  }
  const Matrix& mat(int arrow_idx) const { return mats_[arrow_idx]; }
  const std::vector<Matrix>& mats() const { return mats_; }

  bool is_zero() const { return total_dim() == 0; }

  bool operator==(const Rep& o) const {
    return same_quiver(quiver_, o.quiver_) && field_ == o.field_ &&
           dims_ == o.dims_ && mats_ == o.mats_;
  }
  bool operator!=(const Rep& o) const { return !(*this == o); }

 private:
  void validate() const {
    const auto& arrows = quiver_->arrows();
    if (mats_.size() != arrows.size() ||
        dims_.size() != quiver_->vertices().size())
      fail(Errc::ShapeMismatch, "vertex/arrow table sizes");
    for (size_t a = 0; a < arrows.size(); ++a) {
      int rb = dims_[quiver_->vertex_index(arrows[a].from)];
      int re = dims_[quiver_->vertex_index(arrows[a].to)];
      if (mats_[a].rows() != re || mats_[a].cols() != rb ||
          mats_[a].field() != field_)
        fail(Errc::ShapeMismatch,
             "arrow " + arrows[a].name + " has shape " + mats_[a].shape_str() +
                 ", wants " + std::to_string(re) + "x" + std::to_string(rb));
    }
    const auto& rels = quiver_->relations();
    for (size_t r = 0; r < rels.size(); ++r)
      if (!evaluate_relation(rels[r]).is_zero())
        fail(Errc::RelationViolated, "relation #" + std::to_string(r));
  }

  Matrix evaluate_relation(const Relation& rel) const {
    const Arrow& first = quiver_->arrow(rel[0].path.front());
    const Arrow& last = quiver_->arrow(rel[0].path.back());
    int b = quiver_->vertex_index(first.from);
    int e = quiver_->vertex_index(last.to);
    Matrix acc(field_, dims_[e], dims_[b]);
    for (const auto& term : rel) {
      Matrix prod = Matrix::identity(field_, dims_[b]);
      for (const auto& name : term.path)
        prod = mats_[quiver_->arrow_index(name)] * prod;
      acc = acc + prod.scaled(field_.reduce(term.coeff));
    }
    return acc;
  }

  QuiverPtr quiver_;
  FieldSpec field_;
  std::vector<int> dims_;
  std::vector<Matrix> mats_;
};

inline void require_same_category(const Rep& x, const Rep& y) {
  if (!same_quiver(x.quiver(), y.quiver()))
    fail(Errc::QuiverMismatch, "representations of different quivers");
  if (x.field() != y.field())
    fail(Errc::FieldMismatch, "representations over different fields");
}

/// Morphism of representations: one matrix per vertex intertwining the
/// arrow actions.  Validated on construction.
class RepMor {
 public:
  RepMor(Rep source, Rep target, std::vector<Matrix> mats)
      : source_(std::move(source)),
        target_(std::move(target)),
        mats_(std::move(mats)) {
    require_same_category(source_, target_);
    const Quiver& q = *source_.quiver();
    if (mats_.size() != q.vertices().size())
      fail(Errc::ShapeMismatch, "vertex map table size");
    for (size_t v = 0; v < mats_.size(); ++v)
      if (mats_[v].rows() != target_.dim(int(v)) ||
          mats_[v].cols() != source_.dim(int(v)) ||
          mats_[v].field() != source_.field())
        fail(Errc::ShapeMismatch, "vertex " + q.vertices()[v] + " map is " +
                                      mats_[v].shape_str());
    for (size_t a = 0; a < q.arrows().size(); ++a) {
      int b = q.vertex_index(q.arrows()[a].from);
      int e = q.vertex_index(q.arrows()[a].to);
      if (mats_[e] * source_.mat(int(a)) != target_.mat(int(a)) * mats_[b])
        fail(Errc::IntertwiningViolated, "arrow " + q.arrows()[a].name);
    }
  }

  static RepMor identity(const Rep& x) {
    std::vector<Matrix> mats;
    for (size_t v = 0; v < x.dims().size(); ++v)
      mats.push_back(Matrix::identity(x.field(), x.dim(int(v))));
    return RepMor(x, x, std::move(mats));
  }

  static RepMor zero(const Rep& x, const Rep& y) {
    require_same_category(x, y);
    std::vector<Matrix> mats;
    for (size_t v = 0; v < x.dims().size(); ++v)
      mats.emplace_back(x.field(), y.dim(int(v)), x.dim(int(v)));
    return RepMor(x, y, std::move(mats));
  }

  const Rep& source() const { return source_; }
  const Rep& target() const { return target_; }
  const Matrix& mat(int v) const { return mats_[v]; }
  const std::vector<Matrix>& mats() const { return mats_; }

  bool operator==(const RepMor& o) const {
    return source_ == o.source_ && target_ == o.target_ && mats_ == o.mats_;
  }
  bool operator!=(const RepMor& o) const { return !(*this == o); }

  RepMor operator+(const RepMor& o) const {
    if (source_ != o.source_ || target_ != o.target_)
      fail(Errc::CompositionMismatch, "sum of morphisms with different ends");
    std::vector<Matrix> mats;
    for (size_t v = 0; v < mats_.size(); ++v) mats.push_back(mats_[v] + o.mats_[v]);
    return RepMor(source_, target_, std::move(mats));
  }

  RepMor operator-(const RepMor& o) const {
    if (source_ != o.source_ || target_ != o.target_)
      fail(Errc::CompositionMismatch, "difference of morphisms with different ends");
    std::vector<Matrix> mats;
    for (size_t v = 0; v < mats_.size(); ++v) mats.push_back(mats_[v] - o.mats_[v]);
    return RepMor(source_, target_, std::move(mats));
  }

  RepMor scaled(std::uint32_t c) const {
    std::vector<Matrix> mats;
    for (const auto& m : mats_) mats.push_back(m.scaled(c));
    return RepMor(source_, target_, std::move(mats));
  }

  bool is_zero() const {
    for (const auto& m : mats_)
      if (!m.is_zero()) return false;
    return true;
  }

 private:
  Rep source_, target_;
  std::vector<Matrix> mats_;
};

inline RepMor compose(const RepMor& g, const RepMor& f) {
  if (f.target() != g.source())
    fail(Errc::CompositionMismatch, "target of f differs from source of g");
  std::vector<Matrix> mats;
  for (size_t v = 0; v < f.mats().size(); ++v)
    mats.push_back(g.mat(int(v)) * f.mat(int(v)));
  return RepMor(f.source(), g.target(), std::move(mats));
}

inline bool is_injective(const RepMor& f) {
  for (const auto& m : f.mats())
    if (rank_of(m) != m.cols()) return false;
  return true;
}

inline bool is_surjective(const RepMor& f) {
  for (const auto& m : f.mats())
    if (rank_of(m) != m.rows()) return false;
  return true;
}

inline bool is_invertible(const RepMor& f) {
  for (const auto& m : f.mats())
    if (m.rows() != m.cols() || rank_of(m) != m.rows()) return false;
  return true;
}

inline RepMor inverse(const RepMor& f) {
  std::vector<Matrix> mats;
  for (const auto& m : f.mats()) {
    auto inv = inverse(m);
    if (!inv) fail(Errc::NotInjective, "morphism is not invertible");
    mats.push_back(*inv);
  }
  return RepMor(f.target(), f.source(), std::move(mats));
}

/// Nilpotency test: iterate the image chain U_{k+1}(v) = sum of
/// rho_a(U_k(b(a))) over arrows into v.  After m = dim X steps the chain
/// is zero iff every length-m path product vanishes.
inline bool is_nilpotent(const Rep& x) {
  const Quiver& q = *x.quiver();
  int m = x.total_dim();
  if (m == 0) return true;
  std::vector<Matrix> u;  // column spans per vertex
  for (size_t v = 0; v < x.dims().size(); ++v)
    u.push_back(Matrix::identity(x.field(), x.dim(int(v))));
  for (int step = 0; step < m; ++step) {
    std::vector<Matrix> next;
    for (size_t v = 0; v < x.dims().size(); ++v)
      next.emplace_back(x.field(), x.dim(int(v)), 0);
    for (size_t a = 0; a < q.arrows().size(); ++a) {
      int b = q.vertex_index(q.arrows()[a].from);
      int e = q.vertex_index(q.arrows()[a].to);
      next[e] = hstack(next[e], x.mat(int(a)) * u[b]);
    }
    bool all_zero = true;
    for (size_t v = 0; v < next.size(); ++v) {
      next[v] = column_space_basis(next[v]);
      if (next[v].cols() > 0) all_zero = false;
    }
    if (all_zero) return true;
    u = std::move(next);
  }
  return false;
}

/// Canonical basis of Hom(X, Y): solve the intertwining system for all
/// vertex maps jointly.  Unknowns are the entries of the vertex matrices,
/// row-major, vertices in quiver order; the basis follows kernel order.
inline std::vector<RepMor> hom_space(const Rep& x, const Rep& y) {
  require_same_category(x, y);
  const Quiver& q = *x.quiver();
  int nv = static_cast<int>(q.vertices().size());
  std::vector<int> offset(nv + 1, 0);
  for (int v = 0; v < nv; ++v)
    offset[v + 1] = offset[v] + y.dim(v) * x.dim(v);
  int unknowns = offset[nv];
  int eqs = 0;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    eqs += y.dim(e) * x.dim(b);
  }
  Matrix sys(x.field(), eqs, unknowns);
  int row = 0;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    const Matrix& rho = x.mat(int(a));
    const Matrix& sig = y.mat(int(a));
    // Equation grid (r, c) over Y_e rows and X_b columns:
    //   sum_k phi_e[r,k] rho[k,c] - sum_k sig[r,k] phi_b[k,c] = 0.
    for (int r = 0; r < y.dim(e); ++r)
      for (int c = 0; c < x.dim(b); ++c) {
        for (int k = 0; k < x.dim(e); ++k) {
          int col = offset[e] + r * x.dim(e) + k;
          sys.set(row, col, x.field().add(sys.at(row, col), rho.at(k, c)));
        }
        for (int k = 0; k < y.dim(b); ++k) {
          int col = offset[b] + k * x.dim(b) + c;
          sys.set(row, col, x.field().sub(sys.at(row, col), sig.at(r, k)));
        }
        ++row;
      }
  }
  Matrix basis = kernel_basis(sys);
  std::vector<RepMor> out;
  for (int j = 0; j < basis.cols(); ++j) {
    std::vector<Matrix> mats;
    for (int v = 0; v < nv; ++v) {
      Matrix m(x.field(), y.dim(v), x.dim(v));
      for (int r = 0; r < y.dim(v); ++r)
        for (int c = 0; c < x.dim(v); ++c)
          m.set(r, c, basis.at(offset[v] + r * x.dim(v) + c, j));
      mats.push_back(std::move(m));
    }
    out.emplace_back(x, y, std::move(mats));
  }
  return out;
}

inline RepMor hom_combination(const Rep& x, const Rep& y,
                              const std::vector<RepMor>& basis,
                              const std::vector<std::uint32_t>& coeffs) {
  if (coeffs.size() != basis.size())
    fail(Errc::BadParameterLength, std::to_string(coeffs.size()) + " of " +
                                       std::to_string(basis.size()));
  RepMor acc = RepMor::zero(x, y);
  for (size_t i = 0; i < basis.size(); ++i)
    acc = acc + basis[i].scaled(coeffs[i]);
  return acc;
}

struct KernelResult {
  Rep rep;
  RepMor incl;  // rep -> source(f)
};

/// Kernel with canonical per-vertex bases (kernel_basis order).
inline KernelResult kernel(const RepMor& f) {
  const Rep& x = f.source();
  const Quiver& q = *x.quiver();
  std::vector<Matrix> bases;
  std::vector<int> dims;
  for (size_t v = 0; v < x.dims().size(); ++v) {
    bases.push_back(kernel_basis(f.mat(int(v))));
    dims.push_back(bases.back().cols());
  }
  std::vector<Matrix> mats;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    // rho_a maps ker(f_b) into ker(f_e); express in the canonical basis.
    mats.push_back(solve_unique(bases[e], x.mat(int(a)) * bases[b]));
  }
  Rep k(x.quiver(), x.field(), std::move(dims), std::move(mats));
  RepMor incl(k, x, std::move(bases));
  return {std::move(k), std::move(incl)};
}

struct CokernelResult {
  Rep rep;
  RepMor proj;  // target(f) -> rep
};

/// Cokernel: complement the image along its non-pivot coordinates.  With
/// B the canonical image basis (pivot rows r_1 < ... < r_k), the
/// projection sends y to (y - B y|_pivots) restricted to non-pivot rows.
inline CokernelResult cokernel(const RepMor& f) {
  const Rep& y = f.target();
  const Quiver& q = *y.quiver();
  std::vector<Matrix> projs;
  std::vector<int> dims;
  for (size_t v = 0; v < y.dims().size(); ++v) {
    Matrix b = column_space_basis(f.mat(int(v)));
    std::vector<bool> is_pivot(y.dim(int(v)), false);
    std::vector<int> pivot_rows;
    {
      // Pivot row of column c = first row holding its leading 1.
      for (int c = 0; c < b.cols(); ++c)
        for (int r = 0; r < b.rows(); ++r)
          if (b.at(r, c) != 0) {
            pivot_rows.push_back(r);
            is_pivot[r] = true;
            break;
          }
    }
    Matrix p(y.field(), y.dim(int(v)) - b.cols(), y.dim(int(v)));
    int out_row = 0;
    for (int r = 0; r < y.dim(int(v)); ++r) {
      if (is_pivot[r]) continue;
      p.set(out_row, r, 1);
      for (int c = 0; c < b.cols(); ++c)
        p.set(out_row, pivot_rows[c], y.field().neg(b.at(r, c)));
      ++out_row;
    }
    projs.push_back(std::move(p));
    dims.push_back(y.dim(int(v)) - b.cols());
  }
  std::vector<Matrix> mats;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    // Induced map C_b -> C_e: unique solution of M c_b = c_e sigma_a.
    mats.push_back(solve_right_unique(projs[b], projs[e] * y.mat(int(a))));
  }
  Rep c(y.quiver(), y.field(), std::move(dims), std::move(mats));
  RepMor proj(y, c, std::move(projs));
  return {std::move(c), std::move(proj)};
}

struct ImageFactorization {
  Rep kernel_rep;
  RepMor kernel_incl;  // K -> X
  Rep image_rep;
  RepMor onto_image;   // X -> I, surjective
  RepMor from_image;   // I -> Y, injective
  Rep cokernel_rep;
  RepMor cokernel_proj;  // Y -> C
};

/// The chain K -> X -> I -> Y -> C of Definition-style epi-mono
/// factorization, all bases canonical.
inline ImageFactorization image_factorization(const RepMor& f) {
  const Rep& x = f.source();
  const Rep& y = f.target();
  const Quiver& q = *x.quiver();
  KernelResult k = kernel(f);
  CokernelResult c = cokernel(f);
  std::vector<Matrix> incl, onto;
  std::vector<int> dims;
  for (size_t v = 0; v < y.dims().size(); ++v) {
    incl.push_back(column_space_basis(f.mat(int(v))));
    dims.push_back(incl.back().cols());
  }
  std::vector<Matrix> mats;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    mats.push_back(solve_unique(incl[e], y.mat(int(a)) * incl[b]));
  }
  Rep img(x.quiver(), x.field(), std::move(dims), std::move(mats));
  for (size_t v = 0; v < y.dims().size(); ++v)
    onto.push_back(solve_unique(incl[v], f.mat(int(v))));
  RepMor j(img, y, std::move(incl));
  RepMor i(x, img, std::move(onto));
  return {std::move(k.rep),  std::move(k.incl), std::move(img), std::move(i),
          std::move(j),      std::move(c.rep),  std::move(c.proj)};
}

struct DirectSum {
  Rep rep;
  RepMor incl_x, incl_y;  // X -> Z, Y -> Z
  RepMor proj_x, proj_y;  // Z -> X, Z -> Y
};

inline DirectSum direct_sum(const Rep& x, const Rep& y) {
  require_same_category(x, y);
  const Quiver& q = *x.quiver();
  std::vector<int> dims;
  for (size_t v = 0; v < x.dims().size(); ++v)
    dims.push_back(x.dim(int(v)) + y.dim(int(v)));
  std::vector<Matrix> mats;
  for (size_t a = 0; a < q.arrows().size(); ++a)
    mats.push_back(block_diag(x.mat(int(a)), y.mat(int(a))));
  Rep z(x.quiver(), x.field(), std::move(dims), std::move(mats));
  std::vector<Matrix> ix, iy, px, py;
  for (size_t v = 0; v < x.dims().size(); ++v) {
    int dx = x.dim(int(v)), dy = y.dim(int(v));
    Matrix id_x = Matrix::identity(x.field(), dx);
    Matrix id_y = Matrix::identity(x.field(), dy);
    ix.push_back(vstack(id_x, Matrix(x.field(), dy, dx)));
    iy.push_back(vstack(Matrix(x.field(), dx, dy), id_y));
    px.push_back(hstack(id_x, Matrix(x.field(), dx, dy)));
    py.push_back(hstack(Matrix(x.field(), dy, dx), id_y));
  }
  return {z, RepMor(x, z, std::move(ix)), RepMor(y, z, std::move(iy)),
          RepMor(z, x, std::move(px)), RepMor(z, y, std::move(py))};
}

/// Retraction r with r o incl = id, solved jointly with the intertwining
/// constraints; canonical (free parameters zero).  nullopt means the
/// sequence 0 -> X -> Y -> coker -> 0 is not split.
inline std::optional<RepMor> retraction(const RepMor& incl) {
  if (!is_injective(incl)) fail(Errc::NotInjective, "retraction of a non-injection");
  const Rep& x = incl.source();
  const Rep& y = incl.target();
  const Quiver& q = *x.quiver();
  int nv = static_cast<int>(q.vertices().size());
  // Unknowns: entries of r_v (dim X_v rows, dim Y_v cols), row-major.
  std::vector<int> offset(nv + 1, 0);
  for (int v = 0; v < nv; ++v)
    offset[v + 1] = offset[v] + x.dim(v) * y.dim(v);
  int unknowns = offset[nv];
  int eqs = 0;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    eqs += x.dim(e) * y.dim(b);
  }
  for (int v = 0; v < nv; ++v) eqs += x.dim(v) * x.dim(v);
  Matrix sys(x.field(), eqs, unknowns);
  Matrix rhs(x.field(), eqs, 1);
  int row = 0;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    const Matrix& sig = y.mat(int(a));
    const Matrix& rho = x.mat(int(a));
    // r_e sigma_a - rho_a r_b = 0, entry (r, c) over X_e rows, Y_b cols.
    for (int r = 0; r < x.dim(e); ++r)
      for (int c = 0; c < y.dim(b); ++c) {
        for (int k = 0; k < y.dim(e); ++k) {
          int col = offset[e] + r * y.dim(e) + k;
          sys.set(row, col, x.field().add(sys.at(row, col), sig.at(k, c)));
        }
        for (int k = 0; k < x.dim(b); ++k) {
          int col = offset[b] + k * y.dim(b) + c;
          sys.set(row, col, x.field().sub(sys.at(row, col), rho.at(r, k)));
        }
        ++row;
      }
  }
  for (int v = 0; v < nv; ++v) {
    const Matrix& iv = incl.mat(v);
    // r_v incl_v = id, entry (r, c).
    for (int r = 0; r < x.dim(v); ++r)
      for (int c = 0; c < x.dim(v); ++c) {
        for (int k = 0; k < y.dim(v); ++k) {
          int col = offset[v] + r * y.dim(v) + k;
          sys.set(row, col, x.field().add(sys.at(row, col), iv.at(k, c)));
        }
        rhs.set(row, 0, r == c ? 1 : 0);
        ++row;
      }
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  std::vector<Matrix> mats;
  for (int v = 0; v < nv; ++v) {
    Matrix m(x.field(), x.dim(v), y.dim(v));
    for (int r = 0; r < x.dim(v); ++r)
      for (int c = 0; c < y.dim(v); ++c)
        m.set(r, c, sol->at(offset[v] + r * y.dim(v) + c, 0));
    mats.push_back(std::move(m));
  }
  return RepMor(y, x, std::move(mats));
}

/// Exhaustive isomorphism test.  nullopt = undecided (search space above
/// the bound); the test is exact, never probabilistic.
inline std::optional<bool> is_isomorphic(const Rep& x, const Rep& y,
                                         long long bound = 1000000) {
  require_same_category(x, y);
  if (x.dims() != y.dims()) return false;
  std::vector<RepMor> basis = hom_space(x, y);
  long long count = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    count *= x.field().modulus();
    if (count > bound) return std::nullopt;
  }
  std::vector<std::uint32_t> coeffs(basis.size(), 0);
  for (long long it = 0; it < count; ++it) {
    RepMor cand = hom_combination(x, y, basis, coeffs);
    if (is_invertible(cand)) return true;
    for (size_t d = 0; d < coeffs.size(); ++d) {
      if (++coeffs[d] < x.field().modulus()) break;
      coeffs[d] = 0;
    }
  }
  return false;
}

}  // namespace confcalc

#endif  // CONFCALC_QUIVER_HPP
