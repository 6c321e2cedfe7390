#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace xray::fca {

/// Fixed-width dynamic bitset sized at construction.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    void set_all();
    std::size_t count() const;
    bool is_subset_of(const Bitset& other) const;
    /// Equality restricted to bits below `limit`.
    bool prefix_equals(const Bitset& other, std::size_t limit) const;
    /// Copy with every bit at or above `limit` cleared.
    Bitset prefix(std::size_t limit) const;

    Bitset& operator&=(const Bitset& other);
    Bitset& operator|=(const Bitset& other);
    bool operator==(const Bitset&) const = default;

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// objects x properties incidence table. Orderings are duplicate-free and fix
/// the output order of every downstream result.
struct FormalContext {
    std::vector<std::string> objects;
    std::vector<std::string> properties;
    std::vector<Bitset> rows;  // per object, over properties
    std::vector<Bitset> cols;  // per property, over objects

    /// Builds a context and validates the orderings and incidence pairs.
    static FormalContext create(std::vector<std::string> objects,
                                std::vector<std::string> properties,
                                const std::vector<std::pair<std::string, std::string>>& incidence);

    std::size_t object_index(const std::string& id) const;    // throws UnknownId
    std::size_t property_index(const std::string& id) const;  // throws UnknownId
    bool incident(std::size_t obj, std::size_t prop) const { return rows[obj].test(prop); }
    std::size_t incidence_count() const;
};

/// A closed (extent, intent) pair. Ids are listed in context order.
struct Concept {
    std::vector<std::string> extent;
    std::vector<std::string> intent;

    bool proper() const { return !extent.empty() && !intent.empty(); }
    bool operator==(const Concept&) const = default;
};

/// Properties shared by every object in `objs`; all properties for the empty
/// set. Unknown ids raise UnknownId.
std::set<std::string> prime_props(const FormalContext& ctx, const std::set<std::string>& objs);

/// Dual of prime_props.
std::set<std::string> prime_objects(const FormalContext& ctx,
                                    const std::set<std::string>& props);

/// Enumerates every formal concept exactly once via lectic closure stepping
/// over intents, then orders them by descending extent size with a
/// lexicographic tie-break. The degenerate 0x0 context yields one concept
/// (empty extent, empty intent).
std::vector<Concept> enumerate_concepts(const FormalContext& ctx);

/// Concepts with nonempty extent and intent, in enumeration order.
std::vector<Concept> proper_concepts(const std::vector<Concept>& concepts);

/// Concepts in enumeration order plus the cover relation of extent
/// containment (its transitive reduction). covers pairs are (parent, child)
/// indices into `concepts`; the parent extent strictly contains the child's.
struct Lattice {
    std::vector<Concept> concepts;
    std::set<std::pair<std::size_t, std::size_t>> covers;

    std::size_t top_index() const { return 0; }
    std::size_t bottom_index() const { return concepts.empty() ? 0 : concepts.size() - 1; }
};

Lattice build_lattice(std::vector<Concept> concepts);

/// Burmeister text format: header "B", object/property counts, the two name
/// lists, then one 'X'/'.' row per object.
FormalContext read_cxt(std::istream& in);
void write_cxt(std::ostream& out, const FormalContext& ctx);

}  // namespace xray::fca
