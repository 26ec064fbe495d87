#include "redsched/designkit.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace redsched {

bool Block::contains(int v) const {
    return std::find(members.begin(), members.end(), v) != members.end();
}

std::vector<int> Block::sorted() const {
    std::vector<int> s = members;
    std::sort(s.begin(), s.end());
    return s;
}

int block_overlap(const Block& a, const Block& b) {
    int count = 0;
    for (int v : a.members)
        if (b.contains(v)) ++count;
    return count;
}

bool IncidenceStructure::cell(int block, int object) const {
    return blocks[static_cast<size_t>(block)].contains(object);
}

std::vector<int> IncidenceStructure::row_sums() const {
    std::vector<int> r;
    r.reserve(blocks.size());
    for (const Block& blk : blocks) r.push_back(blk.size());
    return r;
}

std::vector<int> IncidenceStructure::column_sums() const {
    std::vector<int> c(static_cast<size_t>(n), 0);
    for (const Block& blk : blocks)
        for (int v : blk.members) ++c[static_cast<size_t>(v)];
    return c;
}

std::string IncidenceStructure::to_text() const {
    std::ostringstream out;
    out << n << ' ' << b() << ' ' << d << '\n';
    for (const Block& blk : blocks) {
        std::string row(static_cast<size_t>(n), '0');
        for (int v : blk.members) row[static_cast<size_t>(v)] = '1';
        out << row << '\n';
    }
    return out.str();
}

IncidenceStructure IncidenceStructure::from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0, b = 0, d = 0;
    if (!(in >> n >> b >> d))
        throw std::invalid_argument("incidence text: bad header, expected \"n b d\"");
    std::vector<Block> blocks;
    blocks.reserve(static_cast<size_t>(b));
    std::string row;
    for (int j = 0; j < b; ++j) {
        if (!(in >> row) || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("incidence text: row " + std::to_string(j) +
                                        " missing or not " + std::to_string(n) + " chars");
        Block blk;
        for (int i = 0; i < n; ++i) {
            char c = row[static_cast<size_t>(i)];
            if (c == '1')
                blk.members.push_back(i);
            else if (c != '0')
                throw std::invalid_argument("incidence text: row " + std::to_string(j) +
                                            " has a char outside {0,1}");
        }
        blocks.push_back(std::move(blk));
    }
    return make_structure(n, d, std::move(blocks));
}

IncidenceStructure make_structure(int n, int d, std::vector<Block> blocks) {
    if (n < 1 || d < 1 || d > n)
        throw std::invalid_argument("incidence structure requires 1 <= d <= n");
    for (size_t j = 0; j < blocks.size(); ++j) {
        const Block& blk = blocks[j];
        if (blk.size() != d)
            throw std::invalid_argument("block " + std::to_string(j) + " has size " +
                                        std::to_string(blk.size()) + ", expected " +
                                        std::to_string(d));
        std::vector<int> s = blk.sorted();
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= n)
                throw std::invalid_argument("block " + std::to_string(j) +
                                            " has an object outside [0,n)");
            if (i > 0 && s[i] == s[i - 1])
                throw std::invalid_argument("block " + std::to_string(j) +
                                            " repeats an object");
        }
    }
    IncidenceStructure out;
    out.n = n;
    out.d = d;
    out.blocks = std::move(blocks);
    return out;
}

bool same_block_multiset(const IncidenceStructure& a, const IncidenceStructure& b) {
    if (a.n != b.n || a.b() != b.b()) return false;
    std::vector<std::vector<int>> sa, sb;
    for (const Block& blk : a.blocks) sa.push_back(blk.sorted());
    for (const Block& blk : b.blocks) sb.push_back(blk.sorted());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

Block round_robin_assignment(long long i, int n, int d) {
    if (d < 1 || d > n)
        throw std::invalid_argument("round_robin_assignment requires 1 <= d <= n");
    if (i < 1) throw std::invalid_argument("round_robin_assignment: job index starts at 1");
    Block blk;
    blk.members.reserve(static_cast<size_t>(d));
    long long base = (i - 1) * static_cast<long long>(d);
    for (int j = 1; j <= d; ++j)
        blk.members.push_back(static_cast<int>((base + j - 1) % n));
    return blk;
}

IncidenceStructure circulant_incidence(int n, int d) {
    if (d < 1 || d > n)
        throw std::invalid_argument("circulant_incidence requires 1 <= d <= n");
    std::vector<Block> blocks;
    blocks.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Block blk;
        for (int l = 0; l < d; ++l) blk.members.push_back((i + l) % n);
        blocks.push_back(std::move(blk));
    }
    return make_structure(n, d, std::move(blocks));
}

IncidenceStructure fano_blocks() {
    // Classical labels 123,145,167,257,347,246,356 stored 0-based.
    std::vector<Block> blocks = {
        {{0, 1, 2}}, {{0, 3, 4}}, {{0, 5, 6}}, {{1, 4, 6}},
        {{2, 3, 6}}, {{1, 3, 5}}, {{2, 4, 5}},
    };
    return make_structure(7, 3, std::move(blocks));
}

std::string DifferenceSet::to_text() const {
    std::ostringstream out;
    out << modulus << ' ' << residues.size() << ':';
    for (size_t i = 0; i < residues.size(); ++i)
        out << (i ? "," : " ") << residues[i];
    return out.str();
}

DifferenceSet DifferenceSet::from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0, d = 0;
    char colon = 0;
    if (!(in >> n >> d >> colon) || colon != ':')
        throw std::invalid_argument("difference set text: expected \"n d: r1,...,rd\"");
    DifferenceSet ds;
    ds.modulus = n;
    for (int i = 0; i < d; ++i) {
        int r = 0;
        char sep = 0;
        if (i > 0 && (!(in >> sep) || sep != ','))
            throw std::invalid_argument("difference set text: expected ','");
        if (!(in >> r))
            throw std::invalid_argument("difference set text: expected residue");
        ds.residues.push_back(r);
    }
    return ds;
}

bool perfect_difference_property(const DifferenceSet& ds) {
    int n = ds.modulus;
    int d = static_cast<int>(ds.residues.size());
    if (n < 1 || d < 1) return false;
    if (static_cast<long long>(d) * (d - 1) != n - 1) return false;
    std::vector<int> dist(static_cast<size_t>(n), 0);
    for (int a : ds.residues) {
        if (a < 0 || a >= n) return false;
        for (int b : ds.residues) {
            if (a == b) continue;
            ++dist[static_cast<size_t>(((a - b) % n + n) % n)];
        }
    }
    if (dist[0] != 0) return false;  // repeated residues
    for (int r = 1; r < n; ++r)
        if (dist[static_cast<size_t>(r)] != 1) return false;
    return true;
}

IncidenceStructure bibd_from_difference_set(const DifferenceSet& ds) {
    if (!perfect_difference_property(ds))
        throw std::invalid_argument("bibd_from_difference_set: residues are not a perfect difference set mod " +
                                    std::to_string(ds.modulus));
    int n = ds.modulus;
    int d = static_cast<int>(ds.residues.size());
    std::vector<Block> blocks;
    blocks.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        Block blk;
        for (int r : ds.residues) blk.members.push_back((r + j) % n);
        blocks.push_back(std::move(blk));
    }
    return make_structure(n, d, std::move(blocks));
}

namespace {

struct DsSearch {
    int n, d;
    long long budget;
    long long nodes = 0;
    bool exhausted = false;
    std::vector<int> chosen;
    std::vector<uint8_t> used;  // difference already produced

    // Marks while checking so collisions among v's own differences
    // (2v = s_i + s_j mod n) are caught too; n odd keeps fwd != n-fwd.
    bool extend(int v) {
        for (size_t i = 0; i < chosen.size(); ++i) {
            int fwd = ((v - chosen[i]) % n + n) % n;
            if (used[static_cast<size_t>(fwd)] || used[static_cast<size_t>(n - fwd)]) {
                for (size_t k = 0; k < i; ++k) {
                    int f = ((v - chosen[k]) % n + n) % n;
                    used[static_cast<size_t>(f)] = 0;
                    used[static_cast<size_t>(n - f)] = 0;
                }
                return false;
            }
            used[static_cast<size_t>(fwd)] = 1;
            used[static_cast<size_t>(n - fwd)] = 1;
        }
        chosen.push_back(v);
        return true;
    }

    void retract() {
        int v = chosen.back();
        chosen.pop_back();
        for (int s : chosen) {
            int fwd = ((v - s) % n + n) % n;
            used[static_cast<size_t>(fwd)] = 0;
            used[static_cast<size_t>(n - fwd)] = 0;
        }
    }

    bool dfs(int from) {
        if (static_cast<int>(chosen.size()) == d) return true;
        int remaining = d - static_cast<int>(chosen.size());
        for (int v = from; v <= n - remaining; ++v) {
            if (++nodes > budget) {
                exhausted = true;
                return false;
            }
            if (!extend(v)) continue;
            if (dfs(v + 1)) return true;
            if (exhausted) return false;
            retract();
        }
        return false;
    }
};

}  // namespace

SearchResult find_difference_set(int n, int d, long long budget) {
    if (static_cast<long long>(d) * (d - 1) + 1 != n)
        throw std::invalid_argument("find_difference_set requires n = d(d-1)+1");
    SearchResult res;
    if (d == 1) {
        res.status = SearchStatus::found;
        res.set = DifferenceSet{{0}, 1};
        return res;
    }
    // Every perfect difference set translates to one containing 0 and 1
    // (the difference 1 must occur somewhere), so forcing both is lossless.
    DsSearch s{n, d, budget, 0, false, {}, std::vector<uint8_t>(static_cast<size_t>(n), 0)};
    s.chosen.push_back(0);
    s.extend(1);
    bool ok = s.dfs(3);
    res.nodes = s.nodes;
    if (ok) {
        res.status = SearchStatus::found;
        res.set = DifferenceSet{s.chosen, n};
    } else {
        res.status = s.exhausted ? SearchStatus::budget_exhausted : SearchStatus::does_not_exist;
    }
    return res;
}

DesignReport verify_design(const IncidenceStructure& s, int lambda) {
    DesignReport rep;
    rep.lambda = lambda;
    rep.sizes_ok = true;
    for (const Block& blk : s.blocks)
        if (blk.size() != s.d) rep.sizes_ok = false;

    std::vector<std::vector<int>> sorted;
    sorted.reserve(s.blocks.size());
    for (const Block& blk : s.blocks) sorted.push_back(blk.sorted());
    std::vector<std::vector<int>> uniq = sorted;
    std::sort(uniq.begin(), uniq.end());
    rep.blocks_distinct =
        std::adjacent_find(uniq.begin(), uniq.end()) == uniq.end();

    std::vector<int> counts(static_cast<size_t>(s.n) * static_cast<size_t>(s.n), 0);
    for (const std::vector<int>& blk : sorted)
        for (size_t i = 0; i < blk.size(); ++i)
            for (size_t j = i + 1; j < blk.size(); ++j)
                ++counts[static_cast<size_t>(blk[i]) * static_cast<size_t>(s.n) +
                         static_cast<size_t>(blk[j])];
    for (int a = 0; a < s.n; ++a)
        for (int b = a + 1; b < s.n; ++b) {
            int c = counts[static_cast<size_t>(a) * static_cast<size_t>(s.n) +
                           static_cast<size_t>(b)];
            if (c != lambda) rep.violations.push_back({a, b, c});
        }

    rep.valid = rep.sizes_ok && rep.violations.empty() &&
                (lambda != 1 || rep.blocks_distinct);
    return rep;
}

std::string DesignReport::summary() const {
    if (valid) return "valid";
    std::ostringstream out;
    out << "invalid:";
    if (!sizes_ok) out << " nonuniform-block-sizes";
    if (lambda == 1 && !blocks_distinct) out << " duplicate-blocks";
    if (!violations.empty()) {
        out << " " << violations.size() << " pair(s) off lambda=" << lambda << ":";
        size_t shown = std::min<size_t>(violations.size(), 8);
        for (size_t i = 0; i < shown; ++i)
            out << " (" << violations[i].a << "," << violations[i].b << ")x"
                << violations[i].count;
        if (violations.size() > shown) out << " ...";
    }
    return out.str();
}

std::optional<DifferenceSet> shipped_difference_set(int d) {
    // Each set below passes perfect_difference_property; see tests.
    static const std::map<int, DifferenceSet> table = {
        {2, {{0, 1}, 3}},
        {3, {{0, 1, 3}, 7}},
        {4, {{0, 1, 3, 9}, 13}},
        {5, {{0, 1, 4, 14, 16}, 21}},
        {6, {{0, 1, 3, 8, 12, 18}, 31}},
        {8, {{0, 1, 3, 13, 32, 36, 43, 52}, 57}},
    };
    auto it = table.find(d);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

bool bibd_order_supported(int d) { return shipped_difference_set(d).has_value(); }

IncidenceStructure known_bibd(int d) {
    std::optional<DifferenceSet> ds = shipped_difference_set(d);
    if (!ds)
        throw std::invalid_argument("no known (n,d,1) design for d=" + std::to_string(d) +
                                    " (n=" + std::to_string(d * (d - 1) + 1) + ")");
    return bibd_from_difference_set(*ds);
}

}  // namespace redsched
