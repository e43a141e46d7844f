#pragma once

#include <json.hpp>

#include "weilkit/central_orders.hpp"
#include "weilkit/dieudonne.hpp"
#include "weilkit/honda_tate.hpp"
#include "weilkit/ip_example.hpp"

namespace weilkit::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "weilkit/1";

// Integers are JSON numbers when they fit in 64 bits and decimal strings otherwise.
json to_json(const Integer& a);
// Rationals are strings "a" or "a/b".
json to_json(const Rational& a);
json poly_to_json(const IntPolynomial& f);
json to_json(const IntegerMatrix& m);  // list of rows

Integer integer_from_json(const json& j);
Rational rational_from_json(const json& j);
IntPolynomial poly_from_json(const json& j);  // list of coefficients or wire string
IntegerMatrix matrix_from_json(const json& j);

json context_json(const GlobalContext& ctx);
json to_json(const PlaceAboveP& place);
json to_json(const HondaTateRecord& rec);
json to_json(const GammaWitnesses& g);

// {q, polys, basis_labels, mult_table} with mult_table[i][j][k] the structure constants.
json export_order(const CentralOrder& order);
CentralOrder import_order(const json& j);  // rebuilds and checks the table

// {q, polys, k, N, basis_labels, structure_constants}.
json export_algebra(const DieudonneAlgebra& alg);
DieudonneAlgebra import_algebra(const json& j);

json to_json(const CenterReport& rep, const Integer& p);
json to_json(const OrdinaryCheck& chk, const DieudonneAlgebra& alg);

// {ring, coordinates, hnf_basis, predicate, p, index}.
json export_presentation(const OrderPresentation& o, const Integer& p);
OrderPresentation import_presentation(const json& j);

json to_json(const FiberProduct& fp);
json to_json(const Sec9Example& ex);

// A Weil set from polynomial strings; every class must validate.
WeilSet weil_set_from_polys(const std::vector<IntPolynomial>& polys, const GlobalContext& ctx);

}  // namespace weilkit::io
