#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace weilkit::cli {

namespace {

using io::json;

struct Options {
    std::string q, p;
    int r = 0;
    std::vector<std::string> polys;
    int degree = 0;
    long precision = 4;
    bool export_algebra = false;
    std::string file;
    std::string output;
    bool no_cache = false;
    bool verify_cache = false;
};

// Thrown for inputs outside the mathematical domain of a command (exit code 2).
struct DomainRejection {
    json body;
};

struct Outcome {
    int exit_code = 0;
    json body;
};

bool given(const CLI::App* sub, const std::string& name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

std::optional<GlobalContext> context_from(const CLI::App* sub, const Options& o, bool required) {
    if (given(sub, "--q")) return GlobalContext::from_q(parse_integer(o.q));
    if (given(sub, "--p")) {
        if (!given(sub, "--r")) throw Error("--p requires --r");
        const Integer p = parse_integer(o.p);
        if (!is_prime(p)) throw Error("--p must be prime");
        if (o.r < 1) throw Error("--r must be positive");
        return GlobalContext::from_pr(p, o.r);
    }
    if (required) throw Error("a context is required: --q, or --p with --r");
    return std::nullopt;
}

std::vector<IntPolynomial> parse_polys(const Options& o) {
    std::vector<IntPolynomial> out;
    for (const auto& s : o.polys) out.push_back(parse_polynomial(s));
    return out;
}

// Validates every polynomial; rejects the whole request if one fails.
WeilSet weil_set_or_reject(const std::vector<IntPolynomial>& polys, const GlobalContext& ctx) {
    json rejections = json::array();
    std::vector<WeilClass> classes;
    for (const auto& f : polys) {
        const auto v = validate_weil(f, ctx);
        if (v.accepted()) {
            classes.push_back(*v.weil_class);
        } else {
            rejections.push_back(json{{"poly", io::poly_to_json(f)}, {"reason", to_string(*v.rejection)}});
        }
    }
    if (!rejections.empty()) throw DomainRejection{json{{"accepted", false}, {"rejections", std::move(rejections)}}};
    return make_weil_set(std::move(classes));
}

json structure_json(const DieudonneStructureReport& s) {
    return json{{"triples_checked", s.triples_checked},
                {"associativity_failures", s.associativity_failures},
                {"fv_equals_p", s.fv_equals_p},
                {"vf_equals_p", s.vf_equals_p},
                {"sigma_order_r", s.sigma_order_r},
                {"exponent_rule", s.exponent_rule},
                {"rank_formula", s.rank_formula},
                {"relation_vanishes", s.relation_vanishes},
                {"ok", s.ok()}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json cmd_validate(const GlobalContext& ctx, const Options& o) {
    if (o.polys.size() != 1) throw Error("validate takes exactly one --poly");
    const IntPolynomial f = parse_polynomial(o.polys.front());
    const auto v = validate_weil(f, ctx);
    json body{{"context", io::context_json(ctx)}, {"poly", io::poly_to_json(f)}, {"accepted", v.accepted()}};
    if (!v.accepted()) {
        body["reason"] = to_string(*v.rejection);
        throw DomainRejection{body};
    }
    body["is_real"] = v.weil_class->is_real;
    body["slope_type"] = to_string(slope_type(*v.weil_class).type);
    return body;
}

json cmd_enumerate(const GlobalContext& ctx, const Options& o) {
    if (o.degree < 1) throw Error("--degree must be positive");
    json classes = json::array();
    for (const auto& c : enumerate_weil(ctx, o.degree))
        classes.push_back(json{{"poly", io::poly_to_json(c.poly)}, {"degree", c.degree()}, {"is_real", c.is_real}});
    return json{{"context", io::context_json(ctx)}, {"degree", o.degree}, {"count", classes.size()}, {"classes", std::move(classes)}};
}

json cmd_invariants(const GlobalContext& ctx, const Options& o) {
    const WeilSet w = weil_set_or_reject(parse_polys(o), ctx);
    json records = json::array();
    for (const auto& c : w.classes) records.push_back(io::to_json(honda_tate_record(c)));
    return json{{"context", io::context_json(ctx)},
                {"records", std::move(records)},
                {"commutative_type", to_string(commutative_classifier(w))}};
}

json cmd_order(const GlobalContext& ctx, const Options& o) {
    const WeilSet w = weil_set_or_reject(parse_polys(o), ctx);
    const CentralOrder order = build_order(w);
    return json{{"order", io::export_order(order)}, {"rank", order.rank()}, {"relations_hold", verify_relations(order)}};
}

json cmd_components(const GlobalContext& ctx, const Options& o) {
    const WeilSet w = weil_set_or_reject(parse_polys(o), ctx);
    const auto parts = connected_components(w);
    json comps = json::array();
    for (const auto& part : parts) {
        json polys = json::array();
        for (const auto& c : part.classes) polys.push_back(io::poly_to_json(c.poly));
        comps.push_back(std::move(polys));
    }
    return json{{"context", io::context_json(ctx)},
                {"components", std::move(comps)},
                {"connected", parts.size() == 1},
                {"product_index", io::to_json(product_index(w, parts))}};
}

json cmd_dieudonne_center(const GlobalContext& ctx, const Options& o) {
    if (o.precision < 2) throw Error("--precision must be at least 2");
    const WeilSet w = weil_set_or_reject(parse_polys(o), ctx);
    const DieudonneAlgebra alg = build_dieudonne(w, o.precision);
    const CenterComparison cmp = verify_center_at_two_precisions(w, o.precision);
    json body{{"context", io::context_json(ctx)},
              {"algebra", json{{"k", alg.precision()}, {"N", alg.N()}, {"zp_rank", alg.zp_rank()}}},
              {"structure", structure_json(check_structure(alg, false))},
              {"center",
               json{{"low", io::to_json(cmp.low, ctx.p)},
                    {"high", io::to_json(cmp.high, ctx.p)},
                    {"common_precision", cmp.common_precision},
                    {"truncations_agree", cmp.truncations_agree},
                    {"passed", cmp.passed()}}}};
    bool ordinary = true;
    for (const auto& c : w.classes) ordinary = ordinary && slope_type(c).type == SlopeType::ordinary;
    body["ordinary"] = ordinary ? io::to_json(ordinary_matrix_check(alg), alg) : json(nullptr);
    if (o.export_algebra) body["export"] = io::export_algebra(alg);
    return body;
}

json cmd_example_sec9(const Options& o) { return io::to_json(example_sec9(parse_integer(o.p))); }

json cmd_gamma(const GlobalContext& ctx) {
    return json{{"context", io::context_json(ctx)}, {"witnesses", io::to_json(gamma_witnesses(ctx))}};
}

json cmd_ingest(const std::optional<GlobalContext>& ctx, const CLI::App* sub, const Options& o, const std::string& text) {
    std::optional<int> bound;
    if (given(sub, "--degree")) {
        if (o.degree < 1) throw Error("--degree must be positive");
        bound = o.degree;
    }
    return json{{"file", o.file}, {"report", ingest_text(text, ctx, bound)}};
}

std::string render(const std::string& command, const Outcome& out) {
    json doc = out.body;
    doc["schema"] = io::kSchema;
    doc["command"] = command;
    return doc.dump(2) + "\n";
}

Outcome guarded(const std::function<json()>& body) {
    try {
        return {0, body()};
    } catch (const DomainRejection& r) {
        return {2, r.body};
    } catch (const PreconditionError& e) {
        return {2, json{{"error", e.what()}, {"kind", "domain"}}};
    } catch (const std::exception& e) {
        return {1, json{{"error", e.what()}, {"kind", "error"}}};
    }
}

CommandResult finish(CommandResult r, const Options& o) {
    if (!o.output.empty()) {
        std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
        if (!out) {
            r.exit_code = 1;
            r.output = render("output", {1, json{{"error", "cannot write " + o.output}, {"kind", "error"}}});
            return r;
        }
        out << r.output;
        r.wrote_file = true;
    }
    return r;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Weil polynomials, Honda-Tate invariants, central orders and Dieudonne algebras", "weilkit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", o.output, "Write the JSON document to this file");
        auto* nc = sub->add_flag("--no-cache", o.no_cache, "Bypass WEILKIT_CACHE_DIR");
        auto* vc = sub->add_flag("--verify-cache", o.verify_cache, "Recompute and compare against the cached output");
        nc->excludes(vc);
    };
    auto add_context = [&](CLI::App* sub) {
        auto* q = sub->add_option("--q", o.q, "Prime power q");
        auto* p = sub->add_option("--p", o.p, "Prime p (with --r)");
        auto* r = sub->add_option("--r", o.r, "Exponent r with q = p^r");
        q->excludes(p);
        q->excludes(r);
        r->needs(p);
    };
    auto add_polys = [&](CLI::App* sub, bool single) {
        auto* opt = sub->add_option("--poly", o.polys, "Coefficients c0,...,cd (constant term first)")->required();
        if (single) opt->expected(1);
    };

    auto* validate = app.add_subcommand("validate", "Check whether a polynomial is a Weil polynomial");
    add_context(validate);
    add_polys(validate, true);
    auto* enumerate = app.add_subcommand("enumerate", "List Weil classes up to a degree");
    add_context(enumerate);
    enumerate->add_option("--degree", o.degree, "Maximal degree")->required();
    auto* invariants = app.add_subcommand("invariants", "Honda-Tate invariants of each class");
    add_context(invariants);
    add_polys(invariants, false);
    auto* order = app.add_subcommand("order", "Central order R_w and its multiplication table");
    add_context(order);
    add_polys(order, false);
    auto* components = app.add_subcommand("components", "Connected components of a Weil set");
    add_context(components);
    add_polys(components, false);
    auto* center = app.add_subcommand("dieudonne-center", "Dieudonne algebra and its center");
    add_context(center);
    add_polys(center, false);
    center->add_option("--precision", o.precision, "Witt precision k")->capture_default_str();
    center->add_flag("--export-algebra", o.export_algebra, "Include the structure constants");
    auto* sec9 = app.add_subcommand("example-sec9", "Worked example for x^2 + p^2 over F_{p^2}");
    sec9->add_option("--p", o.p, "Prime p = 3 mod 4")->required();
    auto* gamma = app.add_subcommand("gamma-witness", "Classes witnessing the divisibility of Gamma");
    add_context(gamma);
    auto* ingest = app.add_subcommand("ingest", "Diff a CSV or JSON list of classes against enumeration");
    add_context(ingest);
    ingest->add_option("--file", o.file, "Input file")->required();
    ingest->add_option("--degree", o.degree, "Degree bound for the enumeration diff");
    for (auto* sub : {validate, enumerate, invariants, order, components, center, sec9, gamma, ingest}) add_common(sub);

    std::vector<std::string> storage{"weilkit"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        return {0, app.help(), false};
    } catch (const CLI::ParseError& e) {
        const auto subs = app.get_subcommands();
        const std::string name = subs.empty() ? "" : subs.front()->get_name();
        return {1, render(name, {1, json{{"error", e.what()}, {"kind", "usage"}}}), false};
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    // Canonical request: everything that determines the output.
    std::string file_text;
    json request{{"command", name}};
    Outcome prepared = guarded([&] {
        if (sub != sec9) {
            const auto ctx = context_from(sub, o, sub != ingest);
            request["q"] = ctx ? json(ctx->q.get_str()) : json(nullptr);
        } else {
            request["p"] = parse_integer(o.p).get_str();
        }
        json polys = json::array();
        for (const auto& f : parse_polys(o)) polys.push_back(to_wire(f));
        request["polys"] = std::move(polys);
        if (sub == enumerate || given(sub, "--degree")) request["degree"] = o.degree;
        if (sub == center) {
            request["precision"] = o.precision;
            request["export_algebra"] = o.export_algebra;
        }
        if (sub == ingest) {
            file_text = read_file(o.file);
            request["file_sha256"] = sha256_hex(file_text);
        }
        return json();
    });
    if (prepared.exit_code != 0) return finish({prepared.exit_code, render(name, prepared), false}, o);

    auto compute = [&]() -> CommandResult {
        const Outcome out = guarded([&]() -> json {
            if (sub == sec9) return cmd_example_sec9(o);
            const auto ctx = context_from(sub, o, sub != ingest);
            if (sub == validate) return cmd_validate(*ctx, o);
            if (sub == enumerate) return cmd_enumerate(*ctx, o);
            if (sub == invariants) return cmd_invariants(*ctx, o);
            if (sub == order) return cmd_order(*ctx, o);
            if (sub == components) return cmd_components(*ctx, o);
            if (sub == center) return cmd_dieudonne_center(*ctx, o);
            if (sub == gamma) return cmd_gamma(*ctx);
            return cmd_ingest(ctx, sub, o, file_text);
        });
        return {out.exit_code, render(name, out), false};
    };

    std::optional<ResultCache> cache;
    if (!o.no_cache) cache = ResultCache::from_environment();
    if (!cache) return finish(compute(), o);

    const std::string key = ResultCache::key(name, request);
    if (auto hit = cache->load(key)) {
        if (!o.verify_cache) return finish(*hit, o);
        CommandResult fresh = compute();
        if (fresh.exit_code != hit->exit_code || fresh.output != hit->output) {
            return finish({1,
                           render(name, {1, json{{"error", "cached output differs from recomputation"},
                                                 {"kind", "cache"},
                                                 {"cache_entry", cache->path_for(key).string()}}}),
                           false},
                          o);
        }
        return finish(fresh, o);
    }
    CommandResult fresh = compute();
    if (fresh.exit_code != 1) cache->store(key, fresh);  // errors are not cached
    return finish(fresh, o);
}

}  // namespace weilkit::cli
