#include "cartier/serialize.hpp"

#include <algorithm>

namespace cartier {

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw UsageError(std::string(what) + " must be a JSON object");
}

}  // namespace

Json to_json(const FieldSpec& spec) {
  return {{"p", spec.p}, {"d", spec.d}, {"modulus", spec.modulus}, {"e", spec.e}};
}

FieldSpec field_spec_from_json(const Json& j) {
  require_object(j, "field");
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto d = get_or<std::uint32_t>(j, "d", 1);
    const auto e = get_or<std::uint32_t>(j, "e", 1);
    FieldSpec spec = default_field_spec(p, d, e);
    if (j.contains("modulus")) spec.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    return spec;
  } catch (const Json::exception& ex) {
    throw UsageError(std::string("bad field spec: ") + ex.what());
  }
}

Json element_to_json(const GaloisField& field, Elem a) { return field.coeffs(a); }

Elem element_from_json(const GaloisField& field, const Json& j) {
  if (j.is_number_integer()) {
    if (field.d() != 1) throw UsageError("integer entries are only accepted over prime fields");
    return field.from_int(j.get<std::int64_t>());
  }
  if (j.is_string()) return field.parse(j.get<std::string>());
  if (!j.is_array()) throw UsageError("field element must be a coefficient list");
  const auto coeffs = j.get<std::vector<std::uint32_t>>();
  if (coeffs.size() > field.d()) throw UsageError("coefficient list longer than the field degree");
  for (auto c : coeffs) {
    if (c >= field.p()) throw UsageError("coefficient " + std::to_string(c) + " out of range");
  }
  return field.from_coeffs(coeffs);
}

Json vector_to_json(const GaloisField& field, const Vector& v) {
  Json out = Json::array();
  for (auto a : v) out.push_back(element_to_json(field, a));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(*m.field(), m.row_vector(r)));
  return out;
}

Matrix matrix_from_json(const FieldPtr& field, const Json& j) {
  if (!j.is_array()) throw UsageError("matrix must be a list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw UsageError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = element_from_json(*field, row.at(c));
  }
  return m;
}

Json to_json(const Subspace& s) {
  return {{"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", matrix_to_json(s.basis())}};
}

Json to_json(const SemilinearModule& m) {
  return {{"field", to_json(m.field()->spec())},
          {"e", m.field()->e()},
          {"dim", m.dim()},
          {"matrix", matrix_to_json(m.matrix())}};
}

SemilinearModule module_from_json(const Json& j, const FieldPtr& fallback) {
  require_object(j, "module");
  FieldPtr field = fallback;
  if (j.contains("field")) {
    FieldSpec spec = field_spec_from_json(j.at("field"));
    if (j.contains("e") && !j.at("field").contains("e")) spec.e = j.at("e").get<std::uint32_t>();
    field = GaloisField::create(spec);
  }
  if (!field) throw UsageError("module has no field");
  if (j.contains("e") && j.at("e").get<std::uint32_t>() != field->e()) {
    throw UsageError("module e = " + j.at("e").dump() + " conflicts with field e = " + std::to_string(field->e()));
  }
  if (!j.contains("matrix")) throw UsageError("module has no matrix");
  Matrix a = matrix_from_json(field, j.at("matrix"));
  if (!a.is_square()) throw UsageError("module matrix must be square");
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != a.rows()) {
    throw UsageError("module dim does not match the matrix");
  }
  return SemilinearModule(field, std::move(a));
}

Json to_json(const PolynomialRing& ring) {
  return {{"field", to_json(ring.field()->spec())}, {"vars", ring.vars()}};
}

RingPtr ring_from_json(const Json& j) {
  require_object(j, "ring");
  if (!j.contains("field") || !j.contains("vars")) throw UsageError("ring needs field and vars");
  return PolynomialRing::create(GaloisField::create(field_spec_from_json(j.at("field"))),
                                j.at("vars").get<std::vector<std::string>>());
}

Json to_json(const CartierOperator& op) {
  return {{"f", op.multiplier().to_string()}, {"e", op.level()}, {"ring", to_json(*op.ring())}};
}

CartierOperator operator_from_json(const Json& j) {
  require_object(j, "operator");
  const RingPtr ring = ring_from_json(j.at("ring"));
  return CartierOperator(parse_polynomial(ring, get_or<std::string>(j, "f", "1")), get_or<std::uint32_t>(j, "e", 1));
}

Json to_json(const Ideal& i) {
  auto gens = i.to_strings();
  std::sort(gens.begin(), gens.end());
  return gens;
}

Json to_json(const HomSpace& h) {
  Json basis = Json::array();
  for (const auto& m : h.basis) basis.push_back(matrix_to_json(m));
  return {{"basis", basis}, {"dim", h.basis.size()}, {"q", h.q}, {"cardinality", h.cardinality()}};
}

Json to_json(const CrystalReport& r) {
  Json lattice = Json::array();
  for (const auto& s : r.lattice) lattice.push_back(to_json(s));
  Json edges = Json::array();
  for (const auto& [a, b] : r.cover_edges) edges.push_back({a, b});
  std::sort(edges.begin(), edges.end());
  return {{"minimal_rep", to_json(r.minimal)},
          {"quasi_length", r.quasi_length},
          {"lattice", lattice},
          {"cover_edges", edges},
          {"jordan_holder_factor_dims", r.factor_dims}};
}

}  // namespace cartier
