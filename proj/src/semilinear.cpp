#include "cartier/semilinear.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <thread>

namespace cartier {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < n; ++i) out = sat_mul(out, base);
  return out;
}

// --- F_p flattening: k^L viewed as F_p^{L d} through polynomial coordinates.

std::vector<Elem> flatten(const GaloisField& k, std::span<const Elem> v) {
  std::vector<Elem> out;
  out.reserve(v.size() * k.d());
  for (auto x : v) {
    for (auto c : k.coeffs(x)) out.push_back(c);
  }
  return out;
}

Vector unflatten(const GaloisField& k, std::span<const Elem> flat) {
  Vector out(flat.size() / k.d());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<std::uint32_t> cs(flat.begin() + static_cast<std::ptrdiff_t>(i * k.d()),
                                  flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * k.d()));
    out[i] = k.from_coeffs(cs);
  }
  return out;
}

FieldPtr prime_field_of(const GaloisField& k) { return make_field(k.p(), 1, 1); }

// F_p-basis of the kernel of an additive map k^in -> k^out, returned as
// k-vectors in the echelon order of the F_p kernel.
std::vector<Vector> fp_kernel(const GaloisField& k, std::size_t in_len, std::size_t out_len,
                              const std::function<Vector(const Vector&)>& map) {
  const FieldPtr fp = prime_field_of(k);
  const std::size_t d = k.d();
  Matrix system(fp, out_len * d, in_len * d);
  for (std::size_t i = 0; i < in_len; ++i) {
    Elem t_power = 1;
    for (std::size_t j = 0; j < d; ++j) {
      Vector input(in_len, 0);
      input[i] = t_power;
      const auto flat = flatten(k, map(input));
      for (std::size_t r = 0; r < flat.size(); ++r) system(r, i * d + j) = flat[r];
      t_power *= k.p();
    }
  }
  const Matrix ker = kernel(system);
  std::vector<Vector> out;
  for (std::size_t r = 0; r < ker.rows(); ++r) out.push_back(unflatten(k, ker.row(r)));
  return out;
}

// Greedy F_q-independent subset of F_p-spanning candidates of an F_q-space.
std::vector<Vector> regroup_over_twist_subfield(const GaloisField& k, const std::vector<Vector>& candidates) {
  if (candidates.empty()) return {};
  const FieldPtr fp = prime_field_of(k);
  const auto gammas = k.twist_subfield_basis();
  const std::size_t flat_len = candidates.front().size() * k.d();
  std::vector<Vector> spanning;
  Subspace current = Subspace::zero(fp, flat_len);
  std::vector<Vector> chosen;
  for (const auto& v : candidates) {
    if (current.contains(flatten(k, v))) continue;
    chosen.push_back(v);
    for (auto g : gammas) spanning.push_back(flatten(k, scale(k, g, v)));
    current = Subspace::span(fp, flat_len, spanning);
  }
  return chosen;
}

void require_compatible(const SemilinearModule& v, const SemilinearModule& w) {
  if (!same_field(*v.field(), *w.field()) || v.twist_exponent() != w.twist_exponent()) {
    throw UsageError("modules are defined over different fields or twists");
  }
}

}  // namespace

SemilinearModule::SemilinearModule(FieldPtr field, Matrix matrix)
    : field_(std::move(field)), matrix_(std::move(matrix)) {
  if (!field_) throw UsageError("module without a field");
  field_->require_twist_divides();
  if (!matrix_.is_square()) throw UsageError("structural matrix must be square");
  if (matrix_.field() && !same_field(*matrix_.field(), *field_)) {
    throw UsageError("structural matrix lives over a different field");
  }
  if (!matrix_.field()) matrix_ = Matrix(field_, 0, 0);
}

SemilinearModule::SemilinearModule(FieldPtr field) : SemilinearModule(field, Matrix(field, 0, 0)) {}

Vector SemilinearModule::apply(const Vector& v) const {
  if (v.size() != dim()) throw UsageError("vector length does not match module dimension");
  return matrix_ * twist(*field_, v, -static_cast<std::int64_t>(twist_exponent()));
}

Matrix SemilinearModule::power_matrix(std::size_t i) const {
  Matrix b = Matrix::identity(field_, dim());
  const auto e = static_cast<std::int64_t>(twist_exponent());
  for (std::size_t k = 0; k < i; ++k) b = matrix_ * twist(b, -e);
  return b;
}

Subspace SemilinearModule::image(const Subspace& n) const {
  std::vector<Vector> images;
  for (const auto& b : n.basis_vectors()) images.push_back(apply(b));
  return Subspace::span(field_, dim(), images);
}

bool SemilinearModule::is_stable(const Subspace& n) const {
  for (const auto& b : n.basis_vectors()) {
    if (!n.contains(apply(b))) return false;
  }
  return true;
}

std::pair<Subspace, std::size_t> stable_image_chain(const SemilinearModule& m) {
  Subspace current = Subspace::full(m.field(), m.dim());
  std::size_t steps = 0;
  for (;;) {
    Subspace next = m.image(current);
    if (next == current) return {current, steps};
    current = std::move(next);
    ++steps;
  }
}

Subspace stable_image(const SemilinearModule& m) { return stable_image_chain(m).first; }

Subspace nilpotent_part(const SemilinearModule& m) {
  const std::size_t n = m.dim();
  const Subspace ker = Subspace::span(kernel(m.power_matrix(n)));
  return twist(ker, static_cast<std::int64_t>(n * m.twist_exponent()));
}

Nilord nilpotence_order(const SemilinearModule& m) {
  Matrix b = Matrix::identity(m.field(), m.dim());
  const auto e = static_cast<std::int64_t>(m.twist_exponent());
  for (std::size_t i = 0; i <= m.dim(); ++i) {
    if (b.is_zero()) return i;
    b = m.matrix() * twist(b, -e);
  }
  return std::nullopt;
}

NilDecomposition decompose(const SemilinearModule& m) {
  NilDecomposition out{nilpotent_part(m), stable_image(m), nilpotence_order(m)};
  if (out.nilpotent.dim() + out.stable.dim() != m.dim() || intersect(out.nilpotent, out.stable).dim() != 0) {
    throw InvariantError("nilpotent part and stable image are not complementary");
  }
  if (!m.is_stable(out.nilpotent) || !m.is_stable(out.stable)) {
    throw InvariantError("decomposition summand is not C-stable");
  }
  return out;
}

SemilinearModule restrict_to(const SemilinearModule& m, const Subspace& n) {
  if (!m.is_stable(n)) throw UsageError("restriction to a subspace that is not C-stable");
  const std::size_t k = n.dim();
  Matrix a(m.field(), k, k);
  const auto basis = n.basis_vectors();
  for (std::size_t j = 0; j < k; ++j) {
    const auto coords = n.coordinates(m.apply(basis[j]));
    for (std::size_t i = 0; i < k; ++i) a(i, j) = coords[i];
  }
  return {m.field(), std::move(a)};
}

Vector project(const Subspace& n, const Vector& v) {
  const auto reduced = n.reduce(v);
  const auto cols = n.non_pivots();
  Vector out(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) out[i] = reduced[cols[i]];
  return out;
}

SemilinearModule quotient(const SemilinearModule& m, const Subspace& n) {
  if (!m.is_stable(n)) throw UsageError("quotient by a subspace that is not C-stable");
  const auto cols = n.non_pivots();
  const std::size_t k = cols.size();
  Matrix a(m.field(), k, k);
  for (std::size_t j = 0; j < k; ++j) {
    Vector unit(m.dim(), 0);
    unit[cols[j]] = 1;
    const auto image = project(n, m.apply(unit));
    for (std::size_t i = 0; i < k; ++i) a(i, j) = image[i];
  }
  return {m.field(), std::move(a)};
}

SemilinearModule block_extension(const SemilinearModule& sub, const SemilinearModule& quot, const Matrix& glue) {
  require_compatible(sub, quot);
  const std::size_t a = sub.dim(), b = quot.dim();
  if (glue.rows() != a || glue.cols() != b) throw UsageError("glue block has the wrong shape");
  Matrix m(sub.field(), a + b, a + b);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) m(i, j) = sub.matrix()(i, j);
    for (std::size_t j = 0; j < b; ++j) m(i, a + j) = glue(i, j);
  }
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) m(a + i, a + j) = quot.matrix()(i, j);
  return {sub.field(), std::move(m)};
}

std::vector<Vector> fixed_points(const SemilinearModule& m) {
  const GaloisField& k = *m.field();
  k.require_twist_divides();
  const auto solutions =
      fp_kernel(k, m.dim(), m.dim(), [&](const Vector& v) { return sub(k, m.apply(v), v); });
  return regroup_over_twist_subfield(k, solutions);
}

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->p() != to_->p() || to_->d() % from_->d() != 0) {
    throw UsageError("no embedding between the given fields");
  }
  const auto& modulus = from_->spec().modulus;
  for (Elem x = 0; x < to_->size(); ++x) {
    Elem acc = 0;
    for (auto it = modulus.rbegin(); it != modulus.rend(); ++it) {
      acc = to_->add(to_->mul(acc, x), to_->from_int(*it));
    }
    if (acc == 0) {
      root_ = x;
      return;
    }
  }
  throw InvariantError("small modulus has no root in the extension field");
}

Elem FieldEmbedding::operator()(Elem a) const {
  const auto cs = from_->coeffs(a);
  Elem acc = 0;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = to_->add(to_->mul(acc, root_), to_->from_int(*it));
  return acc;
}

SemilinearModule base_change(const SemilinearModule& m, std::uint32_t degree) {
  if (degree == 0) throw UsageError("base change degree must be at least 1");
  if (degree == 1) return m;
  const GaloisField& k = *m.field();
  const FieldPtr big = GaloisField::create(default_field_spec(k.p(), k.d() * degree, k.e()));
  const FieldEmbedding embed(m.field(), big);
  std::vector<Elem> data = m.matrix().data();
  for (auto& x : data) x = embed(x);
  return {big, Matrix(big, m.dim(), m.dim(), std::move(data))};
}

std::uint64_t HomSpace::cardinality() const { return sat_pow(q, basis.size()); }

bool is_homomorphism(const Matrix& phi, const SemilinearModule& v, const SemilinearModule& w) {
  require_compatible(v, w);
  if (phi.rows() != w.dim() || phi.cols() != v.dim()) return false;
  const auto e = static_cast<std::int64_t>(v.twist_exponent());
  return phi * v.matrix() == w.matrix() * twist(phi, -e);
}

HomSpace hom_space(const SemilinearModule& v, const SemilinearModule& w) {
  require_compatible(v, w);
  const GaloisField& k = *v.field();
  const std::size_t rows = w.dim(), cols = v.dim();
  const auto e = static_cast<std::int64_t>(v.twist_exponent());
  auto residual = [&](const Vector& flat_phi) {
    const Matrix phi(v.field(), rows, cols, flat_phi);
    const Matrix r = phi * v.matrix() - w.matrix() * twist(phi, -e);
    return r.data();
  };
  HomSpace out;
  out.q = k.q();
  for (auto& flat : regroup_over_twist_subfield(k, fp_kernel(k, rows * cols, rows * cols, residual))) {
    out.basis.emplace_back(v.field(), rows, cols, std::move(flat));
  }
  return out;
}

std::uint64_t subspace_count(std::uint64_t field_size, std::size_t n) {
  // Gaussian binomials via the q-Pascal rule [n,k] = [n-1,k-1] + Q^k [n-1,k].
  std::vector<std::uint64_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 1);
    for (std::size_t k = 1; k < m; ++k) next[k] = sat_add(row[k - 1], sat_mul(sat_pow(field_size, k), row[k]));
    row = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto x : row) total = sat_add(total, x);
  return total;
}

namespace {

void for_each_pivot_set(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    for (;;) {
      fn(pivots);
      // next combination
      std::size_t i = k;
      while (i > 0 && pivots[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pivots[i - 1];
      for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
}

void scan_shape(const SemilinearModule& m, const std::vector<std::size_t>& pivots,
                std::vector<SubmoduleEntry>& out) {
  const std::size_t n = m.dim(), k = pivots.size();
  const Elem size = m.field()->size();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = pivots[r] + 1; c < n; ++c)
      if (!is_pivot[c]) free.emplace_back(r, c);

  Matrix rows(m.field(), k, n);
  for (std::size_t r = 0; r < k; ++r) rows(r, pivots[r]) = 1;
  std::vector<Elem> digits(free.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < free.size(); ++i) rows(free[i].first, free[i].second) = digits[i];
    const Subspace candidate = Subspace::span(rows);
    if (m.is_stable(candidate)) {
      const bool surjective = m.image(candidate).dim() == candidate.dim();
      out.push_back({candidate, surjective});
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == size) digits[i++] = 0;
    if (i == digits.size()) break;
  }
}

}  // namespace

std::vector<SubmoduleEntry> enumerate_submodules(const SemilinearModule& m, std::uint64_t cap, unsigned jobs) {
  const std::uint64_t count = subspace_count(m.field()->size(), m.dim());
  if (count > cap) {
    throw ResourceError("subspace enumeration needs " + std::to_string(count) + " candidates, cap is " +
                        std::to_string(cap));
  }
  std::vector<std::vector<std::size_t>> shapes;
  for_each_pivot_set(m.dim(), [&](const std::vector<std::size_t>& p) { shapes.push_back(p); });

  std::vector<SubmoduleEntry> out;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(shapes.size())));
  if (jobs == 1) {
    for (const auto& s : shapes) scan_shape(m, s, out);
  } else {
    std::vector<std::vector<SubmoduleEntry>> partial(jobs);
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t i = w; i < shapes.size(); i += jobs) scan_shape(m, shapes[i], partial[w]);
        });
      }
    }
    for (auto& part : partial)
      for (auto& entry : part) out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const SubmoduleEntry& a, const SubmoduleEntry& b) { return a.space < b.space; });
  return out;
}

bool is_simple(const SemilinearModule& m, std::uint64_t cap) {
  return m.dim() > 0 && enumerate_submodules(m, cap).size() == 2;
}

std::vector<Matrix> fq_span_elements(const GaloisField& field, const std::vector<Matrix>& basis, std::uint64_t cap) {
  const auto scalars = field.twist_subfield_elements();
  const std::uint64_t total = sat_pow(scalars.size(), basis.size());
  if (total > cap) {
    throw ResourceError("F_q-span has " + std::to_string(total) + " elements, cap is " + std::to_string(cap));
  }
  if (basis.empty()) return {};
  std::vector<Matrix> out;
  std::vector<std::size_t> digits(basis.size(), 0);
  for (;;) {
    Matrix acc = Matrix(basis.front().field(), basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < basis.size(); ++i) acc = acc + scalars[digits[i]] * basis[i];
    out.push_back(std::move(acc));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == scalars.size()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

EndRing end_ring(const SemilinearModule& m, std::uint64_t cap) {
  if (!is_simple(m, cap)) throw UsageError("end_ring requires a simple module");
  const GaloisField& k = *m.field();
  EndRing ring;
  ring.hom = hom_space(m, m);
  ring.order = ring.hom.cardinality();

  // F_p-span of {gamma * b} equals the F_q-span of the basis.
  const FieldPtr fp = prime_field_of(k);
  const std::size_t flat_len = m.dim() * m.dim() * k.d();
  std::vector<Vector> spanning;
  for (const auto& b : ring.hom.basis)
    for (auto g : k.twist_subfield_basis()) spanning.push_back(flatten(k, (g * b).data()));
  const Subspace span = Subspace::span(fp, flat_len, spanning);
  auto in_ring = [&](const Matrix& x) { return span.contains(flatten(k, x.data())); };

  ring.closed = in_ring(Matrix::identity(m.field(), m.dim()));
  ring.commutative = true;
  for (const auto& a : ring.hom.basis) {
    for (const auto& b : ring.hom.basis) {
      const Matrix ab = a * b;
      if (!in_ring(ab)) ring.closed = false;
      if (!(ab == b * a)) ring.commutative = false;
    }
  }
  ring.units = true;
  for (const auto& x : fq_span_elements(k, ring.hom.basis, cap)) {
    if (x.is_zero()) continue;
    const auto inv = inverse(x);
    if (!inv || !in_ring(*inv)) {
      ring.units = false;
      break;
    }
  }
  return ring;
}

LeftFrobeniusModule::LeftFrobeniusModule(FieldPtr field, Matrix matrix)
    : field_(std::move(field)), matrix_(std::move(matrix)) {
  field_->require_twist_divides();
  if (!matrix_.is_square()) throw UsageError("structural matrix must be square");
}

Vector LeftFrobeniusModule::apply(const Vector& w) const {
  if (w.size() != dim()) throw UsageError("vector length does not match module dimension");
  return matrix_ * twist(*field_, w, field_->e());
}

Matrix LeftFrobeniusModule::power_matrix(std::size_t i) const {
  Matrix d = Matrix::identity(field_, dim());
  for (std::size_t k = 0; k < i; ++k) d = matrix_ * twist(d, field_->e());
  return d;
}

Nilord nilpotence_order(const LeftFrobeniusModule& m) {
  for (std::size_t i = 0; i <= m.dim(); ++i) {
    if (m.power_matrix(i).is_zero()) return i;
  }
  return std::nullopt;
}

LeftFrobeniusModule dual(const SemilinearModule& m) {
  return {m.field(), twist(m.matrix(), m.twist_exponent()).transpose()};
}

SemilinearModule dual(const LeftFrobeniusModule& m) {
  return {m.field(), twist(m.matrix().transpose(), -static_cast<std::int64_t>(m.field()->e()))};
}

}  // namespace cartier
