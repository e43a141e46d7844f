#include "json_io.hpp"

namespace weilkit::io {

json to_json(const Integer& a) {
    if (a.fits_slong_p()) return json(static_cast<std::int64_t>(a.get_si()));
    return json(a.get_str());
}

json to_json(const Rational& a) { return json(weilkit::to_string(a)); }

json poly_to_json(const IntPolynomial& f) {
    json out = json::array();
    for (const auto& c : f.coefficients()) out.push_back(to_json(c));
    return out;
}

json to_json(const IntegerMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw Error("expected an integer");
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(integer_from_json(j));
    if (!j.is_string()) throw Error("expected a rational");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    const Integer den = parse_integer(s.substr(slash + 1));
    if (den <= 0) throw Error("rational denominator must be positive");
    Rational out(parse_integer(s.substr(0, slash)), den);
    out.canonicalize();
    return out;
}

IntPolynomial poly_from_json(const json& j) {
    if (j.is_string()) return parse_polynomial(j.get<std::string>());
    if (!j.is_array()) throw Error("expected a coefficient list");
    std::vector<Integer> c;
    for (const auto& x : j) c.push_back(integer_from_json(x));
    return IntPolynomial(c);
}

IntegerMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw Error("expected a list of rows");
    std::vector<std::vector<Integer>> rows;
    for (const auto& row : j) {
        rows.emplace_back();
        for (const auto& x : row) rows.back().push_back(integer_from_json(x));
    }
    return IntegerMatrix::from_rows(rows);
}

json context_json(const GlobalContext& ctx) {
    return json{{"q", to_json(ctx.q)}, {"p", to_json(ctx.p)}, {"r", ctx.r}};
}

json to_json(const PlaceAboveP& place) {
    return json{{"e", place.e}, {"f", place.f}, {"val", to_json(place.root_valuation)}, {"inv", to_json(place.invariant)}};
}

json to_json(const HondaTateRecord& rec) {
    json places = json::array();
    for (const auto& pl : rec.places) places.push_back(to_json(pl));
    json slopes = json::array();
    for (const auto& s : rec.slopes) slopes.push_back(to_json(s));
    json out = context_json(rec.weil_class.context);
    out["poly"] = poly_to_json(rec.weil_class.poly);
    out["places"] = std::move(places);
    out["real_places"] = rec.real_place_count;
    out["s"] = rec.s;
    out["dim"] = rec.dim;
    out["m"] = rec.m;
    out["m_reduced"] = rec.m_reduced ? json(*rec.m_reduced) : json(nullptr);
    out["slope_type"] = to_string(rec.slope_type);
    out["slopes"] = std::move(slopes);
    out["invariant_sum"] = to_json(invariant_sum(rec));
    return out;
}

json to_json(const GammaWitnesses& g) {
    json two = json::array();
    for (const auto& rec : g.s_equals_two) two.push_back(to_json(rec));
    return json{{"s_equals_r", g.s_equals_r ? to_json(*g.s_equals_r) : json(nullptr)},
                {"s_equals_two", std::move(two)},
                {"divisor", to_json(g.divisor)},
                {"note", g.note}};
}

namespace {

json polys_json(const WeilSet& w) {
    json polys = json::array();
    for (const auto& c : w.classes) polys.push_back(poly_to_json(c.poly));
    return polys;
}

WeilSet weil_set_from_json(const json& j) {
    const GlobalContext ctx = GlobalContext::from_q(integer_from_json(j.at("q")));
    std::vector<IntPolynomial> polys;
    for (const auto& p : j.at("polys")) polys.push_back(poly_from_json(p));
    return weil_set_from_polys(polys, ctx);
}

}  // namespace

WeilSet weil_set_from_polys(const std::vector<IntPolynomial>& polys, const GlobalContext& ctx) {
    if (polys.empty()) throw Error("at least one polynomial is required");
    std::vector<WeilClass> classes;
    for (const auto& f : polys) {
        const auto v = validate_weil(f, ctx);
        if (!v.accepted()) throw Error(to_wire(f) + " is not a Weil polynomial: " + to_string(*v.rejection));
        classes.push_back(*v.weil_class);
    }
    return make_weil_set(std::move(classes));
}

json export_order(const CentralOrder& order) {
    const std::size_t n = order.rank();
    json table = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            json cell = json::array();
            for (std::size_t k = 0; k < n; ++k) cell.push_back(to_json(order.structure_constant(i, j, k)));
            row.push_back(std::move(cell));
        }
        table.push_back(std::move(row));
    }
    return json{{"q", to_json(order.weil_set().context.q)},
                {"polys", polys_json(order.weil_set())},
                {"basis_labels", order.basis_labels()},
                {"mult_table", std::move(table)}};
}

CentralOrder import_order(const json& j) {
    CentralOrder order = build_order(weil_set_from_json(j));
    if (export_order(order) != j) throw Error("imported order does not match its multiplication table");
    return order;
}

json export_algebra(const DieudonneAlgebra& alg) {
    const std::size_t n = alg.zp_rank();
    json labels = json::array();
    for (std::size_t i = 0; i < n; ++i) labels.push_back(alg.zp_basis_label(i));
    std::vector<DieudonneAlgebra::Element> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(alg.zp_basis(i));
    json table = json::array();
    for (std::size_t a = 0; a < n; ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < n; ++b) {
            json cell = json::array();
            for (const auto& c : alg.coordinates(alg.multiply(basis[a], basis[b]))) cell.push_back(to_json(c));
            row.push_back(std::move(cell));
        }
        table.push_back(std::move(row));
    }
    return json{{"q", to_json(alg.weil_set().context.q)},
                {"polys", polys_json(alg.weil_set())},
                {"k", alg.precision()},
                {"N", alg.N()},
                {"basis_labels", std::move(labels)},
                {"structure_constants", std::move(table)}};
}

DieudonneAlgebra import_algebra(const json& j) {
    DieudonneAlgebra alg = build_dieudonne(weil_set_from_json(j), j.at("k").get<long>());
    if (export_algebra(alg) != j) throw Error("imported algebra does not match its structure constants");
    return alg;
}

namespace {

json vector_json(const std::vector<Integer>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

}  // namespace

json to_json(const CenterReport& rep, const Integer& p) {
    const long j = std::max(rep.stable_precision, 0L);
    return json{{"precision", rep.precision},
                {"stable_precision", rep.stable_precision},
                {"center_rank", rep.center_rank},
                {"expected_rank", rep.expected_rank},
                {"center_module", to_json(canonical_module(rep.center_basis, p, j))},
                {"image_module", to_json(canonical_module(rep.image_basis, p, j))},
                {"equal", rep.equal},
                {"passed", rep.passed()},
                {"witness", rep.witness ? vector_json(*rep.witness) : json(nullptr)}};
}

json to_json(const OrdinaryCheck& chk, const DieudonneAlgebra& alg) {
    json idem = json::array();
    for (const auto& e : chk.idempotents) idem.push_back(vector_json(alg.coordinates(e)));
    return json{{"verdict", to_string(chk.verdict)},
                {"idempotents", std::move(idem)},
                {"corner_ranks", chk.corner_ranks},
                {"note", chk.note}};
}

json export_presentation(const OrderPresentation& o, const Integer& p) {
    return json{{"ring", o.ring},
                {"coordinates", o.coordinates},
                {"hnf_basis", to_json(o.hnf_basis)},
                {"predicate", o.predicate_description},
                {"p", to_json(p)},
                {"index", to_json(o.index)}};
}

OrderPresentation import_presentation(const json& j) {
    const Integer p = integer_from_json(j.at("p"));
    OrderPresentation o = psi_verify(p).order;
    const json again = export_presentation(o, p);
    if (again != j) throw Error("imported order presentation does not match the recomputed one");
    return o;
}

json to_json(const FiberProduct& fp) {
    return json{{"basis", to_json(fp.basis)}, {"index", to_json(fp.index)}, {"witt_colength", fp.witt_colength}};
}

json to_json(const Sec9Example& ex) {
    json stable = json::array();
    for (const auto& s : ex.stable.proper) stable.push_back(to_json(s));
    json labelings = json::array();
    for (const auto& l : ex.labelings) labelings.push_back(json{{"labeling", l.name}, {"fiber_product", to_json(l.fiber_product)}});
    const auto& psi = ex.psi;
    const auto& s = ex.s_pi;
    return json{
        {"p", to_json(ex.p)},
        {"record", to_json(ex.record)},
        {"r_pi_index_in_Z[i]", to_json(ex.r_pi_index)},
        {"psi",
         json{{"fv_equals_p", psi.fv_equals_p},
              {"squares_cancel", psi.squares_cancel},
              {"frobenius_semilinear", psi.frobenius_semilinear},
              {"verschiebung_semilinear", psi.verschiebung_semilinear},
              {"relations_hold", psi.relations_hold()},
              {"span_index", to_json(psi.span_index)},
              {"order", export_presentation(psi.order, ex.p)}}},
        {"stable_subspaces", json{{"total", ex.stable.all.size()}, {"proper", std::move(stable)}}},
        {"lattice_classes", ex.lattice_classes},
        {"labelings", std::move(labelings)},
        {"S_pi",
         json{{"order", export_presentation(s.order, ex.p)},
              {"hnf_satisfies_predicate", s.hnf_satisfies_predicate},
              {"closed_under_multiplication", s.closed_under_multiplication},
              {"probes", s.probes},
              {"probe_disagreements", s.probe_disagreements},
              {"center", to_json(s.center)},
              {"center_index_in_Z[i]", to_json(s.center_index)},
              {"center_is_Z[ip]", s.center_is_z_ip}}}};
}

}  // namespace weilkit::io
