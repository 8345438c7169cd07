#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cartier/semilinear.hpp"

using namespace cartier;

namespace {

std::vector<Vector> all_vectors(const GaloisField& f, std::size_t n) {
  std::vector<Vector> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.size();
  for (std::uint64_t code = 0; code < total; ++code) {
    Vector v(n);
    auto c = code;
    for (std::size_t i = 0; i < n; ++i, c /= f.size()) v[i] = static_cast<Elem>(c % f.size());
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Matrix> all_matrices(const FieldPtr& f, std::size_t rows, std::size_t cols) {
  std::vector<Matrix> out;
  for (const auto& v : all_vectors(*f, rows * cols)) out.emplace_back(f, rows, cols, v);
  return out;
}

// C(v) straight from the definition, coordinate by coordinate.
Vector naive_apply(const SemilinearModule& m, const Vector& v) {
  const GaloisField& f = *m.field();
  Vector out(m.dim(), 0);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out[i] = f.add(out[i], f.mul(m.matrix()(i, j), f.inv_frobenius(v[j], f.e())));
  return out;
}

Vector naive_power(const SemilinearModule& m, Vector v, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) v = naive_apply(m, v);
  return v;
}

SemilinearModule random_module(std::mt19937& rng, const FieldPtr& f, std::size_t n) {
  std::uniform_int_distribution<Elem> pick(0, f->size() - 1);
  std::bernoulli_distribution zero(0.4);
  Matrix a(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = zero(rng) ? 0 : pick(rng);
  return {f, a};
}

std::uint64_t ipow(std::uint64_t b, std::size_t k) {
  std::uint64_t r = 1;
  while (k--) r *= b;
  return r;
}

// Every subspace of k^n, by spanning all tuples of at most n vectors.
std::set<Subspace> all_subspaces(const FieldPtr& f, std::size_t n) {
  std::set<Subspace> out{Subspace::zero(f, n)};
  std::set<Subspace> frontier = out;
  const auto vectors = all_vectors(*f, n);
  for (std::size_t step = 0; step < n; ++step) {
    std::set<Subspace> next;
    for (const auto& s : frontier)
      for (const auto& v : vectors) next.insert(s + Subspace::span(f, n, std::vector<Vector>{v}));
    out.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

FieldPtr gf4() { return make_field(2, 2); }
Elem omega() { return 2; }

}  // namespace

TEST_CASE("apply and power matrices agree with the definition") {
  std::mt19937 rng(11);
  for (auto f : {make_field(2), gf4(), make_field(2, 3), make_field(3, 2)}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto m = random_module(rng, f, 2);
      for (const auto& v : all_vectors(*f, 2)) {
        REQUIRE(m.apply(v) == naive_apply(m, v));
        for (std::size_t i = 0; i <= 3; ++i) {
          CHECK(m.power_matrix(i) * twist(*f, v, -static_cast<std::int64_t>(i * f->e())) == naive_power(m, v, i));
        }
      }
    }
  }
}

TEST_CASE("q^{-1}-linearity") {
  auto f = make_field(2, 4, 2);
  std::mt19937 rng(3);
  const auto m = random_module(rng, f, 3);
  std::uniform_int_distribution<Elem> pick(0, f->size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const Elem a = pick(rng);
    Vector v{pick(rng), pick(rng), pick(rng)};
    const Vector lhs = m.apply(scale(*f, f->frobenius(a, 2), v));
    CHECK(lhs == scale(*f, a, m.apply(v)));
  }
}

TEST_CASE("GF(4) module A = (omega)") {
  auto f = gf4();
  SemilinearModule m(f, Matrix(f, 1, 1, {omega()}));
  CHECK(m.apply({omega()}) == Vector{1});
  CHECK(m.power_matrix(2) == Matrix::identity(f, 1));
  const auto fix = fixed_points(m);
  REQUIRE(fix.size() == 1);
  CHECK(fix[0] == Vector{f->mul(omega(), omega())});
  const auto d = dual(m);
  CHECK(d.matrix()(0, 0) == f->mul(omega(), omega()));
  CHECK_FALSE(nilpotence_order(d).has_value());
  CHECK_FALSE(nilpotence_order(m).has_value());
}

TEST_CASE("the [[1,1],[0,0]] module over F_2") {
  auto f = make_field(2);
  SemilinearModule m(f, Matrix(f, 2, 2, {1, 1, 0, 0}));
  const auto dec = decompose(m);
  CHECK(dec.nilpotent == Subspace::span(f, 2, std::vector<Vector>{{1, 1}}));
  CHECK(dec.stable == Subspace::span(f, 2, std::vector<Vector>{{1, 0}}));
  CHECK_FALSE(dec.nilord.has_value());
  const auto entries = enumerate_submodules(m);
  std::vector<Subspace> surjective;
  for (const auto& e : entries)
    if (e.surjective) surjective.push_back(e.space);
  CHECK(surjective == std::vector<Subspace>{Subspace::zero(f, 2), dec.stable});
}

TEST_CASE("spec corner cases") {
  auto f2 = make_field(2);
  SemilinearModule zero2(f2, Matrix(f2, 2, 2));
  CHECK(nilpotence_order(zero2) == 1u);
  CHECK(nilpotent_part(zero2) == Subspace::full(f2, 2));
  CHECK(stable_image(zero2).dim() == 0);
  CHECK(fixed_points(zero2).empty());
  SemilinearModule empty(f2);
  CHECK(nilpotence_order(empty) == 0u);

  auto f3 = make_field(3);
  SemilinearModule upper(f3, Matrix(f3, 3, 3, {0, 1, 2, 0, 0, 1, 0, 0, 0}));
  const auto dec = decompose(upper);
  CHECK(dec.nilpotent == Subspace::full(f3, 3));
  REQUIRE(dec.nilord.has_value());
  CHECK(*dec.nilord <= 3);

  SemilinearModule strict(f2, Matrix(f2, 2, 2, {0, 1, 0, 0}));
  CHECK(strict.power_matrix(2).is_zero());

  auto f4 = gf4();
  SemilinearModule id(f4, Matrix::identity(f4, 2));
  CHECK(fixed_points(id).size() == 2);
  CHECK_THROWS_AS(SemilinearModule(GaloisField::create(default_field_spec(2, 3, 2)), Matrix::identity(f4, 1)),
                  UsageError);
}

TEST_CASE("random modules: decomposition, fixed points and nil part against brute force") {
  std::mt19937 rng(2024);
  for (auto f : {make_field(2), gf4(), make_field(2, 3), make_field(3)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      if (ipow(f->size(), n) > 600) continue;
      for (int trial = 0; trial < 8; ++trial) {
        const auto m = random_module(rng, f, n);
        const auto dec = decompose(m);
        CHECK(dec.nilpotent.dim() + dec.stable.dim() == n);
        CHECK(intersect(dec.nilpotent, dec.stable).dim() == 0);
        CHECK(m.is_stable(dec.nilpotent));
        CHECK(m.image(dec.stable) == dec.stable);

        std::set<Vector> killed, image;
        std::size_t fixed = 0;
        const auto vectors = all_vectors(*f, n);
        for (const auto& v : vectors) {
          const auto cn = naive_power(m, v, n);
          if (is_zero(cn)) killed.insert(v);
          image.insert(cn);
          if (naive_apply(m, v) == v) ++fixed;
        }
        CHECK(killed.size() == ipow(f->size(), dec.nilpotent.dim()));
        CHECK(image.size() == ipow(f->size(), dec.stable.dim()));
        for (const auto& v : killed) CHECK(dec.nilpotent.contains(v));
        for (const auto& v : image) CHECK(dec.stable.contains(v));
        const auto fix = fixed_points(m);
        CHECK(fixed == ipow(f->q(), fix.size()));
        CHECK(fix.size() <= dec.stable.dim());
        for (const auto& v : fix) CHECK(m.apply(v) == v);

        Nilord brute;
        for (std::size_t i = 0; i <= n && !brute; ++i)
          if (std::all_of(vectors.begin(), vectors.end(), [&](const Vector& v) { return is_zero(naive_power(m, v, i)); }))
            brute = i;
        CHECK(nilpotence_order(m) == brute);
        CHECK(nilpotence_order(dual(m)) == brute);
        CHECK(dual(dual(m)).matrix() == m.matrix());
      }
    }
  }
}

TEST_CASE("Hom spaces against exhaustive search") {
  std::mt19937 rng(5);
  for (auto f : {make_field(2), gf4()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto v = random_module(rng, f, 2);
      const auto w = random_module(rng, f, trial % 2 + 1);
      const auto hom = hom_space(v, w);
      std::uint64_t count = 0;
      for (const auto& phi : all_matrices(f, w.dim(), v.dim())) {
        bool ok = true;
        for (const auto& x : all_vectors(*f, v.dim())) ok = ok && phi * naive_apply(v, x) == naive_apply(w, phi * x);
        count += ok;
        CHECK(ok == is_homomorphism(phi, v, w));
      }
      CHECK(count == hom.cardinality());
      for (const auto& b : hom.basis) CHECK(is_homomorphism(b, v, w));
    }
  }
  auto f2 = make_field(2);
  SemilinearModule id(f2, Matrix::identity(f2, 2));
  CHECK(hom_space(id, id).basis.size() == 4);
  CHECK(hom_space(id, SemilinearModule(f2)).cardinality() == 1);
  auto f4 = gf4();
  SemilinearModule sigma(f4, Matrix::identity(f4, 1));
  CHECK(hom_space(sigma, sigma).basis.size() == 1);
  CHECK(hom_space(sigma, sigma).q == 2);
  CHECK_THROWS_AS(hom_space(id, sigma), UsageError);
}

TEST_CASE("submodule enumeration against all subspaces") {
  std::mt19937 rng(9);
  for (auto [f, n] : std::vector<std::pair<FieldPtr, std::size_t>>{{make_field(2), 3}, {gf4(), 2}, {make_field(3), 2}}) {
    const auto subspaces = all_subspaces(f, n);
    CHECK(subspace_count(f->size(), n) == subspaces.size());
    for (int trial = 0; trial < 6; ++trial) {
      const auto m = random_module(rng, f, n);
      std::vector<SubmoduleEntry> expected;
      for (const auto& s : subspaces) {
        std::vector<Vector> images;
        for (const auto& b : s.basis_vectors()) images.push_back(naive_apply(m, b));
        const auto img = Subspace::span(f, n, images);
        if (s.contains(img)) expected.push_back({s, img == s});
      }
      const auto got = enumerate_submodules(m);
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].space == expected[i].space);
        CHECK(got[i].surjective == expected[i].surjective);
      }
      const auto threaded = enumerate_submodules(m, kDefaultSubspaceCap, 4);
      REQUIRE(threaded.size() == got.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(threaded[i].space == got[i].space);

      std::vector<Subspace> fixed;
      for (const auto& e : got)
        if (e.surjective) fixed.push_back(e.space);
      for (const auto& a : fixed) {
        for (const auto& b : fixed) {
          CHECK(std::find(fixed.begin(), fixed.end(), a + b) != fixed.end());
          CHECK(std::find(fixed.begin(), fixed.end(), intersect(a, b)) != fixed.end());
        }
      }
    }
  }
  auto f8 = make_field(2, 3);
  CHECK_THROWS_AS(enumerate_submodules(SemilinearModule(f8, Matrix::identity(f8, 5))), ResourceError);
  CHECK(subspace_count(2, 2) == 5);
  CHECK(subspace_count(2, 3) == 16);
  CHECK(subspace_count(3, 2) == 6);
}

TEST_CASE("simplicity and endomorphism rings") {
  auto f4 = gf4();
  SemilinearModule sigma(f4, Matrix::identity(f4, 1));
  CHECK(is_simple(sigma));
  const auto end = end_ring(sigma);
  CHECK(end.order == 2);
  CHECK(end.is_field());

  SemilinearModule zero(f4, Matrix(f4, 1, 1));
  CHECK(is_simple(zero));
  const auto end0 = end_ring(zero);
  CHECK(end0.order == 4);
  CHECK(end0.is_field());

  auto f2 = make_field(2);
  SemilinearModule id(f2, Matrix::identity(f2, 2));
  CHECK_FALSE(is_simple(id));
  CHECK_THROWS_AS(end_ring(id), UsageError);

  // x -> x^{1/2} twisted by a companion matrix of an irreducible over F_2.
  SemilinearModule companion(f2, Matrix(f2, 2, 2, {0, 1, 1, 1}));
  CHECK(is_simple(companion));
  const auto endc = end_ring(companion);
  CHECK(endc.order == 4);
  CHECK(endc.is_field());
}

TEST_CASE("restriction, quotient, extension and base change") {
  auto f = make_field(2);
  SemilinearModule m(f, Matrix(f, 2, 2, {1, 1, 0, 0}));
  const auto top = stable_image(m);
  CHECK(restrict_to(m, top).matrix() == Matrix(f, 1, 1, {1}));
  const auto q = quotient(m, top);
  CHECK(q.dim() == 1);
  CHECK(q.matrix().is_zero());
  CHECK_THROWS_AS(restrict_to(m, Subspace::span(f, 2, std::vector<Vector>{{0, 1}})), UsageError);

  SemilinearModule a(f, Matrix(f, 1, 1, {1})), b(f, Matrix(f, 1, 1, {0}));
  const auto ext = block_extension(a, b, Matrix(f, 1, 1, {1}));
  CHECK(ext.matrix() == m.matrix());

  auto f4 = gf4();
  auto f16 = make_field(2, 4);
  FieldEmbedding emb(f4, f16);
  for (Elem x = 0; x < 4; ++x) {
    for (Elem y = 0; y < 4; ++y) {
      CHECK(emb(f4->mul(x, y)) == f16->mul(emb(x), emb(y)));
      CHECK(emb(f4->add(x, y)) == f16->add(emb(x), emb(y)));
    }
  }
  SemilinearModule one(f, Matrix(f, 1, 1, {1}));
  CHECK(fixed_points(base_change(one, 2)).size() == 1);
  SemilinearModule w(f4, Matrix(f4, 1, 1, {omega()}));
  const auto big = base_change(w, 3);
  CHECK(big.field()->size() == 64);
  CHECK(fixed_points(big).size() == 1);
  CHECK(base_change(w, 1).matrix() == w.matrix());
}
