#include <algorithm>
#include <cstdint>
#include <map>

#include "weilkit/dieudonne.hpp"
#include "weilkit/finite_field.hpp"

namespace weilkit {

namespace {

using Vec = std::vector<std::int64_t>;
using Rows = std::vector<Vec>;

constexpr std::size_t kMaxDimension = 10;
constexpr std::int64_t kMaxCyclicGenerators = 2000000;

// Fully reduced row echelon form, zero rows dropped.
Rows echelon(Rows rows, std::int64_t p) {
    if (rows.empty()) return rows;
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const std::int64_t inv = inverse_mod_p(rows[rank][col], p);
        for (auto& x : rows[rank]) x = x * inv % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const std::int64_t f = rows[i][col];
            for (std::size_t j = 0; j < n; ++j) rows[i][j] = ((rows[i][j] - f * rows[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

bool in_span(const Rows& ech, Vec v, std::int64_t p) {
    for (const auto& row : ech) {
        const auto piv = static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](std::int64_t x) { return x != 0; }) -
                                                  row.begin());
        const std::int64_t f = v[piv];
        if (f == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - f * row[j]) % p + p) % p;
    }
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

Vec apply(const std::vector<Vec>& g, const Vec& v, std::int64_t p) {
    Vec out(v.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j) acc = (acc + g[i][j] * v[j]) % p;
        out[i] = acc;
    }
    return out;
}

// Smallest subspace containing rows and stable under the generators.
Rows close(Rows rows, const std::vector<std::vector<Vec>>& gens, std::int64_t p) {
    Rows ech = echelon(rows, p);
    Rows queue = ech;
    while (!queue.empty()) {
        const Vec u = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            Vec w = apply(g, u, p);
            if (in_span(ech, w, p)) continue;
            ech.push_back(w);
            ech = echelon(ech, p);
            queue.push_back(std::move(w));
        }
    }
    return ech;
}

IntegerMatrix to_matrix(const Rows& rows, std::size_t n) {
    IntegerMatrix m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Integer(static_cast<long>(rows[i][j]));
    return m;
}

std::int64_t small_prime(const Integer& p) {
    if (!is_prime(p) || !p.fits_slong_p() || p >= Integer(1L << 31)) throw PreconditionError("p must be a prime below 2^31");
    return p.get_si();
}

std::vector<std::vector<Vec>> generator_rows(const LatticeModP& action, std::int64_t p) {
    std::vector<std::vector<Vec>> gens;
    for (const auto& g : action.generators) {
        if (g.rows() != action.dimension || g.cols() != action.dimension)
            throw Error("generator has the wrong shape for the lattice action");
        std::vector<Vec> rows(action.dimension, Vec(action.dimension));
        for (std::size_t i = 0; i < action.dimension; ++i)
            for (std::size_t j = 0; j < action.dimension; ++j) rows[i][j] = mod(g(i, j), Integer(p)).get_si();
        gens.push_back(std::move(rows));
    }
    return gens;
}

}  // namespace

IntegerMatrix row_echelon_mod_p(const IntegerMatrix& rows, const Integer& p) {
    const std::int64_t pp = small_prime(p);
    Rows rs;
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        Vec v(rows.cols());
        for (std::size_t j = 0; j < rows.cols(); ++j) v[j] = mod(rows(i, j), p).get_si();
        rs.push_back(std::move(v));
    }
    return to_matrix(echelon(std::move(rs), pp), rows.cols());
}

bool is_stable(const LatticeModP& action, const IntegerMatrix& subspace_rows) {
    const std::int64_t p = small_prime(action.p);
    const auto gens = generator_rows(action, p);
    Rows rs;
    for (std::size_t i = 0; i < subspace_rows.rows(); ++i) {
        Vec v(action.dimension);
        for (std::size_t j = 0; j < action.dimension; ++j) v[j] = mod(subspace_rows(i, j), action.p).get_si();
        rs.push_back(std::move(v));
    }
    const Rows ech = echelon(rs, p);
    for (const auto& g : gens)
        for (const auto& u : ech)
            if (!in_span(ech, apply(g, u, p), p)) return false;
    return true;
}

StableSubspaces enumerate_stable_lattices(const LatticeModP& action) {
    const std::int64_t p = small_prime(action.p);
    const std::size_t n = action.dimension;
    if (n == 0) throw PreconditionError("lattice action needs positive dimension");
    if (n > kMaxDimension) throw PreconditionError("stable lattice enumeration is capped at dimension 10");
    const auto gens = generator_rows(action, p);

    std::int64_t lines = 0, pw = 1;
    for (std::size_t i = 0; i < n; ++i) {
        lines += pw;
        pw *= p;
        if (lines > kMaxCyclicGenerators) throw PreconditionError("too many lines to enumerate cyclic submodules");
    }

    // Cyclic submodules, one generator per line (first nonzero coordinate 1).
    std::map<Rows, bool> cyclic_set;
    for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t free = n - lead - 1;
        std::int64_t count = 1;
        for (std::size_t i = 0; i < free; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            Vec v(n, 0);
            v[lead] = 1;
            std::int64_t x = idx;
            for (std::size_t j = lead + 1; j < n; ++j) {
                v[j] = x % p;
                x /= p;
            }
            cyclic_set[close({v}, gens, p)] = true;
        }
    }
    std::vector<Rows> cyclic;
    for (const auto& [rows, unused] : cyclic_set) cyclic.push_back(rows);

    // Every submodule is a sum of cyclic ones.
    std::map<Rows, bool> found;
    std::vector<Rows> queue{Rows{}};
    found[Rows{}] = true;
    for (const auto& c : cyclic)
        if (found.emplace(c, true).second) queue.push_back(c);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Rows u = queue[head];
        for (const auto& c : cyclic) {
            Rows sum = u;
            sum.insert(sum.end(), c.begin(), c.end());
            sum = echelon(std::move(sum), p);
            if (found.emplace(sum, true).second) queue.push_back(std::move(sum));
        }
    }

    std::vector<Rows> all;
    for (const auto& [rows, unused] : found) all.push_back(rows);
    std::stable_sort(all.begin(), all.end(), [](const Rows& a, const Rows& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    StableSubspaces out;
    for (const auto& rows : all) {
        out.all.push_back(to_matrix(rows, n));
        if (!rows.empty() && rows.size() < n) out.proper.push_back(out.all.back());
    }
    for (const auto& s : out.all)
        if (!is_stable(action, s)) throw Error("enumerated subspace is not stable");
    return out;
}

}  // namespace weilkit
