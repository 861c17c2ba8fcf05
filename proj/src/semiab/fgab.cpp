// Copyright 2026 The semiab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semiab/fgab.hpp"

#include <sstream>
#include <utility>

#include "semiab/error.hpp"

namespace semiab::fgab {

IntVector GroupVector::coordinates() const {
  IntVector c = free_part;
  c.insert(c.end(), torsion_part.begin(), torsion_part.end());
  return c;
}

bool GroupVector::is_zero() const { return is_zero_vector(free_part) && is_zero_vector(torsion_part); }

std::string to_string(const GroupVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.free_part.size(); ++i) os << (i ? "," : "") << v.free_part[i].get_str();
  os << ';';
  for (std::size_t i = 0; i < v.torsion_part.size(); ++i) os << (i ? "," : "") << v.torsion_part[i].get_str();
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// FgAmbient

FgAmbient::FgAmbient(std::size_t free_rank, IntVector torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
  for (const auto& d : torsion_)
    if (d < 2) throw InputError("torsion orders must be >= 2, got " + d.get_str());
}

bool FgAmbient::is_divisibility_sorted() const {
  for (std::size_t i = 1; i < torsion_.size(); ++i)
    if (!divides(torsion_[i - 1], torsion_[i])) return false;
  return true;
}

GroupVector FgAmbient::zero() const { return GroupVector{IntVector(free_rank_), IntVector(torsion_.size())}; }

GroupVector FgAmbient::basis_vector(std::size_t i) const {
  if (i >= dimension()) throw InputError("basis index out of range");
  GroupVector v = zero();
  if (i < free_rank_)
    v.free_part[i] = 1;
  else
    v.torsion_part[i - free_rank_] = 1;
  return v;
}

GroupVector FgAmbient::make(IntVector free_part, IntVector torsion_part) const {
  if (free_part.size() != free_rank_ || torsion_part.size() != torsion_.size())
    throw InputError("vector shape does not match ambient " + to_string());
  for (std::size_t i = 0; i < torsion_.size(); ++i) torsion_part[i] = mod_floor(torsion_part[i], torsion_[i]);
  return GroupVector{std::move(free_part), std::move(torsion_part)};
}

GroupVector FgAmbient::from_coordinates(const IntVector& coords) const {
  if (coords.size() != dimension()) throw InputError("coordinate count does not match ambient " + to_string());
  return make(IntVector(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(free_rank_)),
              IntVector(coords.begin() + static_cast<std::ptrdiff_t>(free_rank_), coords.end()));
}

bool FgAmbient::contains(const GroupVector& v) const {
  if (v.free_part.size() != free_rank_ || v.torsion_part.size() != torsion_.size()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    if (v.torsion_part[i] < 0 || v.torsion_part[i] >= torsion_[i]) return false;
  return true;
}

void FgAmbient::check(const GroupVector& v) const {
  if (!contains(v)) throw InputError("vector " + fgab::to_string(v) + " is not an element of " + to_string());
}

GroupVector FgAmbient::add(const GroupVector& a, const GroupVector& b) const {
  check(a);
  check(b);
  GroupVector r = a;
  for (std::size_t i = 0; i < free_rank_; ++i) r.free_part[i] += b.free_part[i];
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    r.torsion_part[i] += b.torsion_part[i];
    if (r.torsion_part[i] >= torsion_[i]) r.torsion_part[i] -= torsion_[i];
  }
  return r;
}

GroupVector FgAmbient::neg(const GroupVector& a) const {
  check(a);
  GroupVector r = a;
  for (auto& x : r.free_part) x = -x;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    if (r.torsion_part[i] != 0) r.torsion_part[i] = torsion_[i] - r.torsion_part[i];
  return r;
}

GroupVector FgAmbient::sub(const GroupVector& a, const GroupVector& b) const { return add(a, neg(b)); }

GroupVector FgAmbient::scale(const Integer& k, const GroupVector& a) const {
  check(a);
  GroupVector r = a;
  for (auto& x : r.free_part) x *= k;
  for (std::size_t i = 0; i < torsion_.size(); ++i) r.torsion_part[i] = mod_floor(r.torsion_part[i] * k, torsion_[i]);
  return r;
}

GroupVector FgAmbient::combine(std::span<const Integer> coeffs, std::span<const GroupVector> vs) const {
  if (coeffs.size() != vs.size()) throw InputError("coefficient count mismatch");
  IntVector acc(dimension());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    check(vs[j]);
    if (coeffs[j] == 0) continue;
    for (std::size_t i = 0; i < free_rank_; ++i) acc[i] += coeffs[j] * vs[j].free_part[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i) acc[free_rank_ + i] += coeffs[j] * vs[j].torsion_part[i];
  }
  return from_coordinates(acc);
}

IntMatrix FgAmbient::relation_columns() const {
  IntMatrix r(dimension(), torsion_.size());
  for (std::size_t j = 0; j < torsion_.size(); ++j) r(free_rank_ + j, j) = torsion_[j];
  return r;
}

std::string FgAmbient::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// SubgroupBasis, GroupHom

SubgroupBasis::SubgroupBasis(FgAmbient a, std::vector<GroupVector> gens)
    : ambient(std::move(a)), generators(std::move(gens)) {
  for (const auto& g : generators) ambient.check(g);
}

SubgroupBasis SubgroupBasis::whole(const FgAmbient& a) {
  std::vector<GroupVector> gens;
  for (std::size_t i = 0; i < a.dimension(); ++i) gens.push_back(a.basis_vector(i));
  return SubgroupBasis(a, std::move(gens));
}

IntMatrix SubgroupBasis::generator_matrix() const {
  std::vector<IntVector> cols;
  cols.reserve(generators.size());
  for (const auto& g : generators) cols.push_back(g.coordinates());
  return IntMatrix::from_columns(cols, ambient.dimension());
}

namespace {

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
  IntMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

// Is v zero in the ambient (free part zero, torsion divisible)?
bool vanishes(const FgAmbient& a, const IntVector& coords) {
  for (std::size_t i = 0; i < a.free_rank(); ++i)
    if (coords[i] != 0) return false;
  for (std::size_t i = 0; i < a.torsion_count(); ++i)
    if (!divides(a.torsion_orders()[i], coords[a.free_rank() + i])) return false;
  return true;
}

void require_same_ambient(const FgAmbient& a, const FgAmbient& b) {
  if (!(a == b)) throw InputError("ambient mismatch: " + a.to_string() + " vs " + b.to_string());
}

}  // namespace

GroupHom::GroupHom(FgAmbient domain, FgAmbient codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.dimension() || matrix_.cols() != domain_.dimension())
    throw InputError("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " + std::to_string(codomain_.dimension()) +
                     "x" + std::to_string(domain_.dimension()));
  for (std::size_t j = 0; j < domain_.torsion_count(); ++j) {
    const std::size_t col = domain_.free_rank() + j;
    IntVector image = matrix_.column(col);
    for (auto& x : image) x *= domain_.torsion_orders()[j];
    if (!vanishes(codomain_, image))
      throw InputError("homomorphism is not well defined: generator " + std::to_string(col) + " of order " +
                       domain_.torsion_orders()[j].get_str() + " maps to an element of larger order");
  }
}

GroupVector GroupHom::apply(const GroupVector& v) const {
  domain_.check(v);
  return codomain_.from_coordinates(matrix_.apply(v.coordinates()));
}

GroupHom GroupHom::identity(const FgAmbient& a) { return GroupHom(a, a, IntMatrix::identity(a.dimension())); }

GroupHom GroupHom::compose(const GroupHom& other) const {
  require_same_ambient(other.codomain_, domain_);
  return GroupHom(other.domain_, codomain_, matrix_ * other.matrix_);
}

// ---------------------------------------------------------------------------
// Membership

MembershipOracle::MembershipOracle(SubgroupBasis s)
    : subgroup_(std::move(s)),
      snf_(smith_normal_form(hstack(subgroup_.generator_matrix(), subgroup_.ambient.relation_columns()))) {}

std::optional<IntVector> MembershipOracle::witness(const GroupVector& v) const {
  subgroup_.ambient.check(v);
  auto x = solve_integer(snf_, v.coordinates());
  if (!x) return std::nullopt;
  x->resize(subgroup_.generators.size());
  return x;
}

std::optional<IntVector> membership(const GroupVector& v, const SubgroupBasis& s) {
  return MembershipOracle(s).witness(v);
}

bool coset_membership(const GroupVector& v, const GroupVector& offset, const SubgroupBasis& s) {
  return membership(s.ambient.sub(v, offset), s).has_value();
}

SubgroupBasis simplify(const SubgroupBasis& s) {
  const FgAmbient& a = s.ambient;
  IntMatrix lattice = hstack(s.generator_matrix(), a.relation_columns()).transpose();
  IntMatrix h = hermite_row_basis(lattice);
  std::vector<GroupVector> gens;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    GroupVector g = a.from_coordinates(h.row(i));
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  return SubgroupBasis(a, std::move(gens));
}

SubgroupBasis intersect(const SubgroupBasis& s1, const SubgroupBasis& s2) {
  require_same_ambient(s1.ambient, s2.ambient);
  const FgAmbient& a = s1.ambient;
  const IntMatrix g1 = s1.generator_matrix();
  IntMatrix neg_g2 = scalar_multiple(s2.generator_matrix(), -1);
  // G1 x - G2 y + R z = 0  <=>  G1 x is in both subgroups.
  IntMatrix k = integer_kernel(hstack(hstack(g1, neg_g2), a.relation_columns()));
  std::vector<GroupVector> gens;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    IntVector x(s1.generators.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = k(i, j);
    GroupVector g = a.from_coordinates(g1.apply(x));
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  return simplify(SubgroupBasis(a, std::move(gens)));
}

Quotient quotient(const SubgroupBasis& s) {
  const FgAmbient& a = s.ambient;
  SmithForm snf = smith_normal_form(hstack(s.generator_matrix(), a.relation_columns()));
  const std::size_t n = a.dimension();
  std::vector<std::size_t> free_rows, torsion_rows;
  IntVector orders;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= snf.rank) {
      free_rows.push_back(i);
    } else if (snf.D(i, i) > 1) {
      torsion_rows.push_back(i);
      orders.push_back(snf.D(i, i));
    }
  }
  FgAmbient q(free_rows.size(), orders);
  IntMatrix proj(q.dimension(), n);
  std::size_t r = 0;
  for (std::size_t i : free_rows) {
    for (std::size_t j = 0; j < n; ++j) proj(r, j) = snf.U(i, j);
    ++r;
  }
  for (std::size_t t = 0; t < torsion_rows.size(); ++t, ++r)
    for (std::size_t j = 0; j < n; ++j) proj(r, j) = mod_floor(snf.U(torsion_rows[t], j), orders[t]);
  return Quotient{q, GroupHom(a, q, std::move(proj))};
}

Quotient normalize(const FgAmbient& a) { return quotient(SubgroupBasis::trivial(a)); }

bool independent_wrt(std::span<const GroupVector> zs, const SubgroupBasis& s) {
  for (const auto& z : zs) s.ambient.check(z);
  if (zs.empty()) return true;
  Quotient q = quotient(s);
  std::vector<IntVector> images;
  for (const auto& z : zs) images.push_back(q.projection.apply(z).coordinates());
  // Kernel of Z^n -> ambient/s: solutions of W k + R_q t = 0, projected to k.
  IntMatrix w = IntMatrix::from_columns(images, q.ambient.dimension());
  IntMatrix k = integer_kernel(hstack(w, q.ambient.relation_columns()));
  for (std::size_t j = 0; j < k.cols(); ++j)
    for (std::size_t i = 0; i < zs.size(); ++i)
      if (k(i, j) != 0) return false;
  return true;
}

bool contains_subgroup(const SubgroupBasis& outer, const SubgroupBasis& inner) {
  require_same_ambient(outer.ambient, inner.ambient);
  MembershipOracle oracle(outer);
  for (const auto& g : inner.generators)
    if (!oracle.contains(g)) return false;
  return true;
}

bool same_subgroup(const SubgroupBasis& a, const SubgroupBasis& b) {
  return contains_subgroup(a, b) && contains_subgroup(b, a);
}

SubgroupBasis extend(const SubgroupBasis& s, std::span<const GroupVector> extra) {
  std::vector<GroupVector> gens = s.generators;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return SubgroupBasis(s.ambient, std::move(gens));
}

bool verify_prop_fg(const SubgroupBasis& gamma, std::span<const GroupVector> ys,
                    std::span<const GroupVector> zs) {
  if (ys.size() != zs.size()) throw InputError("ys and zs must have equal length");
  const FgAmbient& a = gamma.ambient;
  SubgroupBasis gamma1 = extend(gamma, ys);
  if (!independent_wrt(zs, gamma1))
    throw InputError("precondition violated: zs are not independent with respect to <gamma, ys>");
  std::vector<GroupVector> shifted;
  for (std::size_t i = 0; i < ys.size(); ++i) shifted.push_back(a.add(ys[i], zs[i]));
  SubgroupBasis gamma1p = extend(gamma, shifted);
  return same_subgroup(intersect(gamma1, gamma1p), gamma);
}

// ---------------------------------------------------------------------------
// DirectSum

DirectSum::DirectSum(std::vector<FgAmbient> parts) : parts_(std::move(parts)) {
  std::size_t free = 0;
  IntVector torsion;
  for (const auto& p : parts_) {
    free_offset_.push_back(free);
    torsion_offset_.push_back(torsion.size());
    free += p.free_rank();
    torsion.insert(torsion.end(), p.torsion_orders().begin(), p.torsion_orders().end());
  }
  ambient_ = FgAmbient(free, std::move(torsion));
}

GroupVector DirectSum::inject(std::size_t i, const GroupVector& v) const {
  const FgAmbient& p = parts_.at(i);
  p.check(v);
  GroupVector r = ambient_.zero();
  for (std::size_t k = 0; k < p.free_rank(); ++k) r.free_part[free_offset_[i] + k] = v.free_part[k];
  for (std::size_t k = 0; k < p.torsion_count(); ++k) r.torsion_part[torsion_offset_[i] + k] = v.torsion_part[k];
  return r;
}

GroupVector DirectSum::join(std::span<const GroupVector> vs) const {
  if (vs.size() != parts_.size()) throw InputError("direct sum component count mismatch");
  GroupVector r = ambient_.zero();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const FgAmbient& p = parts_[i];
    p.check(vs[i]);
    for (std::size_t k = 0; k < p.free_rank(); ++k) r.free_part[free_offset_[i] + k] = vs[i].free_part[k];
    for (std::size_t k = 0; k < p.torsion_count(); ++k)
      r.torsion_part[torsion_offset_[i] + k] = vs[i].torsion_part[k];
  }
  return r;
}

GroupVector DirectSum::component(const GroupVector& v, std::size_t i) const {
  ambient_.check(v);
  const FgAmbient& p = parts_.at(i);
  GroupVector r = p.zero();
  for (std::size_t k = 0; k < p.free_rank(); ++k) r.free_part[k] = v.free_part[free_offset_[i] + k];
  for (std::size_t k = 0; k < p.torsion_count(); ++k) r.torsion_part[k] = v.torsion_part[torsion_offset_[i] + k];
  return r;
}

}  // namespace semiab::fgab
