#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"

namespace weilkit::cli {

namespace {

using io::json;

struct Record {
    long line = 0;  // 1-based line (CSV) or element index (JSON)
    Integer q;
    IntPolynomial poly;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void parse_csv(const std::string& text, std::vector<Record>& records, json& malformed) {
    std::istringstream in(text);
    std::string line;
    long number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        try {
            const auto comma = t.find(',');
            if (comma == std::string::npos) throw Error("expected q followed by coefficients");
            Record r;
            r.line = number;
            r.q = parse_integer(trim(t.substr(0, comma)));
            r.poly = parse_polynomial(t.substr(comma + 1));
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            malformed.push_back(json{{"line", number}, {"error", e.what()}});
        }
    }
}

void parse_json(const std::string& text, std::vector<Record>& records, json& malformed) {
    const json doc = json::parse(text);
    if (!doc.is_array()) throw Error("JSON input must be an array of {q, coefficients}");
    long number = 0;
    for (const auto& item : doc) {
        ++number;
        try {
            Record r;
            r.line = number;
            r.q = io::integer_from_json(item.at("q"));
            r.poly = io::poly_from_json(item.at("coefficients"));
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            malformed.push_back(json{{"line", number}, {"error", e.what()}});
        }
    }
}

json entry(const Record& r) { return json{{"line", r.line}, {"q", io::to_json(r.q)}, {"poly", io::poly_to_json(r.poly)}}; }

}  // namespace

json ingest_text(const std::string& text, const std::optional<GlobalContext>& ctx, const std::optional<int>& degree_bound) {
    std::vector<Record> records;
    json malformed = json::array();
    const std::string t = trim(text);
    if (!t.empty() && t[0] == '[') {
        parse_json(t, records, malformed);
    } else {
        parse_csv(text, records, malformed);
    }

    json rejected = json::array(), mismatch = json::array(), missing = json::array(), beyond = json::array(),
         duplicates = json::array();
    std::vector<std::pair<Record, WeilClass>> accepted;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : records) {
        try {
            const GlobalContext c = GlobalContext::from_q(r.q);
            if (ctx && !(c == *ctx)) {
                mismatch.push_back(entry(r));
                continue;
            }
            const auto v = validate_weil(r.poly, c);
            if (!v.accepted()) {
                json e = entry(r);
                e["reason"] = to_string(*v.rejection);
                rejected.push_back(std::move(e));
                continue;
            }
            if (!seen.emplace(r.q.get_str(), to_wire(r.poly)).second) {
                duplicates.push_back(entry(r));
                continue;
            }
            accepted.emplace_back(r, *v.weil_class);
        } catch (const std::exception& e) {
            malformed.push_back(json{{"line", r.line}, {"error", e.what()}});
        }
    }

    int bound = 0;
    if (degree_bound) {
        bound = *degree_bound;
    } else {
        for (const auto& [r, w] : accepted) bound = std::max(bound, w.degree());
    }

    // Enumeration per q at the degree bound.
    std::map<Integer, std::set<std::string>> enumerated;
    std::map<Integer, long> in_file;
    for (const auto& [r, w] : accepted) {
        if (w.degree() > bound) {
            beyond.push_back(entry(r));
            continue;
        }
        auto it = enumerated.find(r.q);
        if (it == enumerated.end()) {
            std::set<std::string> polys;
            for (const auto& c : enumerate_weil(w.context, bound)) polys.insert(to_wire(c.poly));
            it = enumerated.emplace(r.q, std::move(polys)).first;
        }
        if (it->second.count(to_wire(r.poly)) == 0) {
            missing.push_back(entry(r));
        } else {
            ++in_file[r.q];
        }
    }
    json only = json::object();
    for (const auto& [q, polys] : enumerated)
        only[q.get_str()] = static_cast<long>(polys.size()) - in_file[q];

    const std::size_t diffs = rejected.size() + missing.size();
    return json{{"records", records.size()},
                {"accepted", accepted.size()},
                {"degree_bound", accepted.empty() && !degree_bound ? json(nullptr) : json(bound)},
                {"rejected", std::move(rejected)},
                {"malformed", std::move(malformed)},
                {"context_mismatch", std::move(mismatch)},
                {"duplicates", std::move(duplicates)},
                {"missing_from_enumeration", std::move(missing)},
                {"beyond_degree_bound", std::move(beyond)},
                {"enumeration_only", std::move(only)},
                {"diffs", diffs}};
}

}  // namespace weilkit::cli
