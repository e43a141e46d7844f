#include "weilkit/padic.hpp"

#include <algorithm>
#include <memory>

#include "json.hpp"
#include "weilkit/finite_field.hpp"
#include "weilkit/integer_factor.hpp"
#include "weilkit/resultant.hpp"

namespace weilkit {

PadicContext::PadicContext(Integer p, long k) : p_(std::move(p)), k_(k) {
    if (!is_prime(p_)) throw Error("p-adic context needs a prime, got " + p_.get_str());
    if (k_ < 1) throw Error("p-adic precision must be positive");
    pk_ = ipow(p_, static_cast<unsigned long>(k_));
}

std::optional<long> PadicContext::valuation(const Integer& a) const {
    Integer r = reduce(a);
    if (r == 0) return std::nullopt;
    return weilkit::valuation(r, p_);
}

std::vector<Rational> NewtonPolygon::root_valuations() const {
    std::vector<Rational> out;
    for (const auto& s : segments)
        for (long i = 0; i < s.length; ++i) out.push_back(s.slope);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using Point = std::pair<long, long>;

// Lower convex hull of points sorted by x, keeping corners only.
std::vector<Point> lower_hull(const std::vector<Point>& pts) {
    std::vector<Point> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull.back();
            // Remove b unless it lies strictly below segment a--pt.
            long cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
            if (cross <= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(pt);
    }
    return hull;
}

NewtonPolygon polygon_from_points(const std::vector<Point>& pts) {
    NewtonPolygon np;
    np.vertices = lower_hull(pts);
    for (std::size_t i = 0; i + 1 < np.vertices.size(); ++i) {
        const auto& [x0, y0] = np.vertices[i];
        const auto& [x1, y1] = np.vertices[i + 1];
        Rational slope(y0 - y1, x1 - x0);
        slope.canonicalize();
        np.segments.push_back({slope, x1 - x0});
    }
    return np;
}

}  // namespace

NewtonPolygon newton_polygon(const IntPolynomial& poly, const Integer& p) {
    if (poly.is_zero()) throw Error("Newton polygon of the zero polynomial");
    if (poly.coeff(0) == 0) throw Error("remove zero roots first");
    if (!is_prime(p)) throw Error("Newton polygon needs a prime");
    std::vector<Point> pts;
    for (int i = 0; i <= poly.degree(); ++i)
        if (poly.coeff(i) != 0) pts.emplace_back(i, valuation(poly.coeff(i), p));
    return polygon_from_points(pts);
}

std::vector<IntPolynomial> hensel_split(const IntPolynomial& poly, const std::vector<IntPolynomial>& parts_mod_p,
                                        const PadicContext& ctx) {
    IntPolynomial f = reduce_mod(poly, ctx.modulus());
    if (f.degree() != poly.degree()) throw Error("hensel_split: leading coefficient vanishes modulo p^k");
    // A unit leading coefficient is absorbed into the first factor.
    Integer lc = f.leading();
    if (mod(lc, ctx.p()) == 0) throw Error("hensel_split: leading coefficient is not a unit");
    Integer lcinv = inverse_mod(lc, ctx.modulus());
    IntPolynomial monic = reduce_mod(f * lcinv, ctx.modulus());
    std::vector<IntPolynomial> out = hensel_lift(monic, parts_mod_p, ctx.p(), ctx.precision());
    if (lc != 1) out[0] = reduce_mod(out[0] * lc, ctx.modulus());
    return out;
}

Rational local_invariant(int e, int f, const Rational& root_valuation, int r) {
    Rational x = Rational(e * f) * root_valuation / Rational(r);
    x.canonicalize();
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational out = x - Rational(fl);
    out.canonicalize();
    return out;
}

void PlaceOverrides::add(const IntPolynomial& poly, const Integer& p, std::vector<PlaceAboveP> places) {
    table_[{to_wire(poly), p.get_str()}] = std::move(places);
}

const std::vector<PlaceAboveP>* PlaceOverrides::find(const IntPolynomial& poly, const Integer& p) const {
    auto it = table_.find({to_wire(poly), p.get_str()});
    return it == table_.end() ? nullptr : &it->second;
}

PlaceOverrides PlaceOverrides::from_json(const std::string& text) {
    PlaceOverrides out;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("override file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error("override file must hold a JSON list");
    try {
        for (const auto& item : doc) {
            IntPolynomial poly;
            if (item.at("poly").is_string()) {
                poly = parse_polynomial(item.at("poly").get<std::string>());
            } else {
                std::vector<Integer> c;
                for (const auto& v : item.at("poly")) c.emplace_back(v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()));
                poly = IntPolynomial(c);
            }
            Integer p(std::to_string(item.at("p").get<long long>()));
            std::vector<PlaceAboveP> places;
            for (const auto& pl : item.at("places")) {
                PlaceAboveP place;
                place.e = pl.at("e").get<int>();
                place.f = pl.at("f").get<int>();
                place.root_valuation = Rational(pl.at("val_num").get<long>(), pl.at("val_den").get<long>());
                place.root_valuation.canonicalize();
                places.push_back(place);
            }
            out.add(poly, p, std::move(places));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed override record: ") + e.what());
    }
    return out;
}

namespace {

// One irreducible factor of a residual polynomial. root is set for linear
// factors (as a residue class of degree < deg psi).
struct ResidualFactor {
    int degree = 1;
    int multiplicity = 1;
    std::optional<FpPolynomial> root;
};

struct ResidualFactorization {
    std::vector<ResidualFactor> factors;
    int opaque_degree = 0;  // repeated part that could not be split further
};

ResidualFactorization residual_factors_fp(const FpPolynomial& residual) {
    ResidualFactorization out;
    for (const auto& [rho, k] : factor(residual)) {
        ResidualFactor rf;
        rf.degree = rho.degree();
        rf.multiplicity = k;
        if (rho.degree() == 1)
            rf.root = FpPolynomial(rho.prime(), {(rho.prime() - rho.coeff(0)) % rho.prime()});
        out.factors.push_back(rf);
    }
    return out;
}

FiniteField::Element evaluate(const FiniteField& field, const std::vector<FiniteField::Element>& c,
                              const FiniteField::Element& x) {
    FiniteField::Element acc = field.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = field.add(field.mul(acc, x), c[i]);
    return acc;
}

// Residual factorization over F_p[t]/(psi) with deg psi >= 2. Repeated
// linear factors are located by exhaustive search in small fields.
ResidualFactorization residual_factors_fq(const std::shared_ptr<const FiniteField>& field,
                                          const std::vector<FiniteField::Element>& coeffs) {
    ResidualFactorization out;
    FqPolynomial rest(field, coeffs);
    if (rest.is_squarefree()) {
        for (int d : rest.factor_degrees()) out.factors.push_back({d, 1, std::nullopt});
        return out;
    }
    if (field->order() > 4096) {
        out.opaque_degree = rest.degree();
        return out;
    }
    const long size = field->order().get_si();
    const std::int64_t p = field->characteristic();
    const int n = field->degree();
    for (long idx = 0; idx < size && rest.degree() > 0; ++idx) {
        FiniteField::Element b(static_cast<std::size_t>(n));
        long t = idx;
        for (int i = 0; i < n; ++i, t /= p) b[static_cast<std::size_t>(i)] = t % p;
        int k = 0;
        while (rest.degree() > 0 && field->is_zero(evaluate(*field, rest.coefficients(), b))) {
            rest = rest.divmod(FqPolynomial(field, {field->neg(b), field->one()})).first;
            ++k;
        }
        if (k > 0) out.factors.push_back({1, k, field->to_poly(b)});
    }
    if (rest.degree() > 0) {
        if (rest.is_squarefree()) {
            for (int d : rest.factor_degrees()) out.factors.push_back({d, 1, std::nullopt});
        } else {
            out.opaque_degree = rest.degree();
        }
    }
    return out;
}

long gauss_valuation(const IntPolynomial& a, const Integer& p) {
    long best = -1;
    for (const auto& c : a.coefficients()) {
        if (c == 0) continue;
        long v = valuation(c, p);
        if (best < 0 || v < best) best = v;
    }
    return best;
}

// Ore's residual polynomial test on exact phi-adic expansions of poly,
// refining phi <- phi - b p^h whenever a residual polynomial of an integral
// slope has a repeated linear factor y - b.
class Decomposer {
public:
    Decomposer(const IntPolynomial& poly, const Integer& p, int r) : poly_(poly), p_(p), r_(r) {}

    std::vector<PlaceAboveP> run() {
        const FpPolynomial reduced = FpPolynomial::from_integer(poly_, p_.get_si());
        for (const auto& [psi, a] : factor(reduced)) {
            const bool at_zero = psi.degree() == 1 && psi.coeff(0) == 0;
            if (!at_zero && a == 1) {
                add_place(1, psi.degree(), Rational(0));
                continue;
            }
            std::shared_ptr<const FiniteField> field;
            if (psi.degree() > 1) field = std::make_shared<const FiniteField>(psi);
            cluster(psi.to_integer(), psi, field, a, at_zero, std::nullopt, Rational(0), 0);
        }
        std::sort(places_.begin(), places_.end(), [](const PlaceAboveP& x, const PlaceAboveP& y) {
            if (x.root_valuation != y.root_valuation) return x.root_valuation < y.root_valuation;
            if (x.e != y.e) return x.e < y.e;
            return x.f < y.f;
        });
        int total = unresolved_;
        for (const auto& pl : places_) total += pl.degree();
        if (total != poly_.degree()) throw Error("decompose_places: internal degree mismatch for " + to_wire(poly_));
        if (unresolved_ > 0) {
            throw IrregularPlaces("irregular: " + to_wire(poly_) + " at p = " + p_.get_str() + ":" + why_, places_,
                                  unresolved_);
        }
        return places_;
    }

private:
    void add_place(int e, int f, const Rational& rv) {
        PlaceAboveP place;
        place.e = e;
        place.f = f;
        place.root_valuation = rv;
        place.invariant = local_invariant(e, f, rv, r_);
        places_.push_back(place);
    }

    // Roots of poly whose reduction is a root of psi and with v(phi(root)) > floor.
    // ell is the multiplicity of psi in poly mod p.
    void cluster(const IntPolynomial& phi, const FpPolynomial& psi, const std::shared_ptr<const FiniteField>& field,
                 int ell, bool at_zero, const std::optional<Rational>& rv_fixed, const Rational& floor, int depth) {
        const int dpsi = psi.degree();
        if (depth > 64) {
            unresolved_ += ell * dpsi;
            why_ += " refinement did not terminate;";
            return;
        }
        std::vector<IntPolynomial> a;
        IntPolynomial rest = poly_;
        for (int i = 0; i <= ell; ++i) {
            auto [quo, rem] = divmod(rest, phi);
            a.push_back(std::move(rem));
            rest = std::move(quo);
        }
        std::vector<Point> pts;
        std::vector<long> v(a.size(), -1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            v[i] = gauss_valuation(a[i], p_);
            if (v[i] >= 0) pts.emplace_back(static_cast<long>(i), v[i]);
        }
        const NewtonPolygon np = polygon_from_points(pts);
        for (std::size_t s = 0; s < np.segments.size(); ++s) {
            const auto& seg = np.segments[s];
            if (seg.slope <= floor) break;
            const long x0 = np.vertices[s].first, y0 = np.vertices[s].second;
            const long h = seg.slope.get_num().get_si();
            const long e = seg.slope.get_den().get_si();
            const long t = seg.length / e;
            const Rational rv = rv_fixed ? *rv_fixed : (at_zero ? seg.slope : Rational(0));
            const std::int64_t pp = p_.get_si();
            auto residue = [&](long i, long y) {
                std::vector<std::int64_t> red;
                const Integer scale = ipow(p_, static_cast<unsigned long>(y));
                for (const auto& c : a[static_cast<std::size_t>(i)].coefficients()) {
                    Integer quo;
                    mpz_divexact(quo.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
                    red.push_back(static_cast<std::int64_t>(mpz_fdiv_ui(quo.get_mpz_t(), static_cast<unsigned long>(pp))));
                }
                return FpPolynomial(pp, red);
            };
            ResidualFactorization rf;
            if (!field) {
                std::vector<std::int64_t> coeffs;
                for (long j = 0; j <= t; ++j) {
                    const long i = x0 + j * e, y = y0 - j * h;
                    coeffs.push_back(v[static_cast<std::size_t>(i)] == y ? residue(i, y).coeff(0) : 0);
                }
                rf = residual_factors_fp(FpPolynomial(pp, coeffs));
            } else {
                std::vector<FiniteField::Element> coeffs;
                for (long j = 0; j <= t; ++j) {
                    const long i = x0 + j * e, y = y0 - j * h;
                    coeffs.push_back(v[static_cast<std::size_t>(i)] == y ? field->from_poly(residue(i, y)) : field->zero());
                }
                rf = residual_factors_fq(field, coeffs);
            }
            for (const auto& f : rf.factors) {
                if (f.multiplicity == 1) {
                    add_place(static_cast<int>(e), dpsi * f.degree, rv);
                } else if (e == 1 && f.root) {
                    IntPolynomial shift = f.root->to_integer() * ipow(p_, static_cast<unsigned long>(h));
                    cluster(phi - shift, psi, field, ell, at_zero, rv, seg.slope, depth + 1);
                } else {
                    unresolved_ += static_cast<int>(e) * f.multiplicity * f.degree * dpsi;
                    why_ += " residual polynomial of slope " + seg.slope.get_str() + " over phi = " + to_string(phi) +
                            " is not squarefree;";
                }
            }
            if (rf.opaque_degree > 0) {
                unresolved_ += static_cast<int>(e) * rf.opaque_degree * dpsi;
                why_ += " residual polynomial of slope " + seg.slope.get_str() + " over phi = " + to_string(phi) +
                        " has a repeated factor of degree > 1;";
            }
        }
    }

    const IntPolynomial& poly_;
    Integer p_;
    int r_;
    std::vector<PlaceAboveP> places_;
    int unresolved_ = 0;
    std::string why_;
};

}  // namespace

std::vector<PlaceAboveP> decompose_places(const IntPolynomial& poly, const Integer& p, int r,
                                          const DecomposeOptions& options) {
    if (!poly.is_monic()) throw Error("decompose_places needs a monic polynomial");
    if (poly.degree() < 1) throw Error("decompose_places needs a nonconstant polynomial");
    if (poly.coeff(0) == 0) throw Error("remove zero roots first");
    if (r < 1) throw Error("extension degree r must be positive");
    if (!is_prime(p)) throw Error("decompose_places needs a prime");
    if (p >= Integer(1L << 31)) throw Error("prime too large for word-size residue arithmetic");
    if (options.overrides) {
        if (const auto* given = options.overrides->find(poly, p)) {
            std::vector<PlaceAboveP> places = *given;
            int total = 0;
            Rational weighted = 0;
            for (auto& pl : places) {
                pl.invariant = local_invariant(pl.e, pl.f, pl.root_valuation, r);
                total += pl.degree();
                weighted += Rational(pl.degree()) * pl.root_valuation;
            }
            if (total != poly.degree() || weighted != Rational(valuation(poly.coeff(0), p))) {
                throw Error("override for " + to_wire(poly) + " is inconsistent with the polynomial");
            }
            std::sort(places.begin(), places.end(), [](const PlaceAboveP& x, const PlaceAboveP& y) {
                if (x.root_valuation != y.root_valuation) return x.root_valuation < y.root_valuation;
                if (x.e != y.e) return x.e < y.e;
                return x.f < y.f;
            });
            return places;
        }
    }
    try {
        return Decomposer(poly, p, r).run();
    } catch (const IrregularPlaces&) {
        if (!options.resolve_irregular) throw;
        return places_via_maximal_order(poly, p, r);
    }
}

}  // namespace weilkit
