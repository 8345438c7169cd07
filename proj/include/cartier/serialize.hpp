#pragma once

#include <json.hpp>

#include "cartier/cartier_operator.hpp"
#include "cartier/crystal.hpp"

namespace cartier {

using Json = nlohmann::json;

Json to_json(const FieldSpec& spec);
/// Missing "modulus" selects the default one; missing "d"/"e" default to 1.
FieldSpec field_spec_from_json(const Json& j);

/// Elements are coefficient lists; plain integers are accepted on input.
Json element_to_json(const GaloisField& field, Elem a);
Elem element_from_json(const GaloisField& field, const Json& j);

Json vector_to_json(const GaloisField& field, const Vector& v);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& field, const Json& j);

/// {"ambient","dim","basis"} with the reduced echelon basis.
Json to_json(const Subspace& s);

/// {"field","e","dim","matrix"}. On input "field" may be omitted when a
/// fallback field is supplied; a top-level "e" must agree with field.e.
Json to_json(const SemilinearModule& m);
SemilinearModule module_from_json(const Json& j, const FieldPtr& fallback = nullptr);

Json to_json(const PolynomialRing& ring);
RingPtr ring_from_json(const Json& j);

Json to_json(const CartierOperator& op);
CartierOperator operator_from_json(const Json& j);

/// Sorted list of reduced Groebner basis strings.
Json to_json(const Ideal& i);

Json to_json(const HomSpace& h);
Json to_json(const CrystalReport& r);

}  // namespace cartier
