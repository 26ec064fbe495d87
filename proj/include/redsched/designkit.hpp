#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace redsched {

// The d distinct servers (urns) one job (ball) is replicated to.
// Members are kept in construction order; indices are 0-based.
struct Block {
    std::vector<int> members;

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int v) const;
    std::vector<int> sorted() const;
    bool operator==(const Block&) const = default;
};

// |a ∩ b|
int block_overlap(const Block& a, const Block& b);

struct DesignParams {
    int n_objects = 0;        // ν
    int block_size = 0;       // k
    int pair_multiplicity = 1;  // λ, fixed to 1 here

    // λ(ν−1) = k(k−1), the symmetric-design necessary condition
    bool symmetric_condition_holds() const {
        return static_cast<long long>(pair_multiplicity) * (n_objects - 1) ==
               static_cast<long long>(block_size) * (block_size - 1);
    }
};

// Block-by-object membership, row j = block j. Duplicate blocks are
// allowed in general (a job sequence may repeat blocks); the design
// verifier is stricter.
struct IncidenceStructure {
    int n = 0;  // objects (columns)
    int d = 0;  // uniform block size (row weight)
    std::vector<Block> blocks;

    int b() const { return static_cast<int>(blocks.size()); }
    bool cell(int block, int object) const;
    std::vector<int> row_sums() const;
    std::vector<int> column_sums() const;
    bool is_square() const { return b() == n; }

    // "n b d" header, then b rows of n chars in {0,1}
    std::string to_text() const;
    static IncidenceStructure from_text(const std::string& text);
};

// Validates member ranges, per-block distinctness and uniform size d.
IncidenceStructure make_structure(int n, int d, std::vector<Block> blocks);

// True when the two structures carry the same multiset of blocks.
bool same_block_multiset(const IncidenceStructure& a, const IncidenceStructure& b);

// Servers for job i >= 1 (1-based job index): the d consecutive slots
// starting at (i-1)*d, mod n, returned as 0-based indices.
Block round_robin_assignment(long long i, int n, int d);

// Row i has ones at columns {i, ..., i+d-1} mod n.
IncidenceStructure circulant_incidence(int n, int d);

// The (7,3,1) design with its classical block labels.
IncidenceStructure fano_blocks();

// d residues mod n whose pairwise differences cover every nonzero
// residue exactly once; cyclic shifts generate a symmetric (n,d,1) design.
struct DifferenceSet {
    std::vector<int> residues;
    int modulus = 0;

    std::string to_text() const;  // "n d: r1,r2,...,rd"
    static DifferenceSet from_text(const std::string& text);
};

bool perfect_difference_property(const DifferenceSet& ds);

// Block j = { (r + j) mod n : r in residues }, j = 0..n-1.
// Throws std::invalid_argument when the difference property fails.
IncidenceStructure bibd_from_difference_set(const DifferenceSet& ds);

enum class SearchStatus { found, does_not_exist, budget_exhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::does_not_exist;
    std::optional<DifferenceSet> set;
    long long nodes = 0;
};

// Backtracking over canonical candidates (0 and 1 forced into the set,
// remaining residues ascending). `budget` caps visited nodes; running out
// of budget is reported apart from a completed fruitless search.
SearchResult find_difference_set(int n, int d, long long budget = 50'000'000);

struct PairViolation {
    int a = 0, b = 0;  // object pair
    int count = 0;     // blocks containing both
};

struct DesignReport {
    bool valid = false;
    bool sizes_ok = false;
    bool blocks_distinct = false;
    int lambda = 0;
    std::vector<PairViolation> violations;  // every pair not covered exactly λ times
    std::string summary() const;
};

// Checks block sizes and that every object pair lies in exactly λ blocks.
// For λ=1 validity additionally requires pairwise-distinct blocks.
DesignReport verify_design(const IncidenceStructure& s, int lambda);

// Validated cyclic sets for the block sizes used throughout; d=7 is
// absent because no (43,7,1) design exists.
std::optional<DifferenceSet> shipped_difference_set(int d);
bool bibd_order_supported(int d);

// Symmetric (n,d,1) design with n = d(d-1)+1 from the shipped sets.
// Throws std::invalid_argument for unsupported d.
IncidenceStructure known_bibd(int d);

}  // namespace redsched
