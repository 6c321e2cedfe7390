#include "xray/fca.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "xray/errors.hpp"

namespace xray::fca {

void Bitset::set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    if (bits_ % 64) words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
}

std::size_t Bitset::count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool Bitset::is_subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool Bitset::prefix_equals(const Bitset& other, std::size_t limit) const {
    const std::size_t full = limit / 64;
    for (std::size_t i = 0; i < full; ++i)
        if (words_[i] != other.words_[i]) return false;
    if (limit % 64) {
        const std::uint64_t mask = (std::uint64_t{1} << (limit % 64)) - 1;
        if ((words_[full] & mask) != (other.words_[full] & mask)) return false;
    }
    return true;
}

Bitset Bitset::prefix(std::size_t limit) const {
    Bitset out(bits_);
    const std::size_t full = limit / 64;
    for (std::size_t i = 0; i < full; ++i) out.words_[i] = words_[i];
    if (limit % 64 && full < words_.size())
        out.words_[full] = words_[full] & ((std::uint64_t{1} << (limit % 64)) - 1);
    return out;
}

Bitset& Bitset::operator&=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

FormalContext FormalContext::create(
    std::vector<std::string> objects, std::vector<std::string> properties,
    const std::vector<std::pair<std::string, std::string>>& incidence) {
    FormalContext ctx;
    ctx.objects = std::move(objects);
    ctx.properties = std::move(properties);

    std::map<std::string, std::size_t> obj_index;
    std::map<std::string, std::size_t> prop_index;
    for (std::size_t i = 0; i < ctx.objects.size(); ++i)
        if (!obj_index.emplace(ctx.objects[i], i).second)
            throw InconsistentInputs("duplicate object id '" + ctx.objects[i] + "'");
    for (std::size_t i = 0; i < ctx.properties.size(); ++i)
        if (!prop_index.emplace(ctx.properties[i], i).second)
            throw InconsistentInputs("duplicate property id '" + ctx.properties[i] + "'");

    ctx.rows.assign(ctx.objects.size(), Bitset(ctx.properties.size()));
    ctx.cols.assign(ctx.properties.size(), Bitset(ctx.objects.size()));
    for (const auto& [obj, prop] : incidence) {
        auto oi = obj_index.find(obj);
        auto pi = prop_index.find(prop);
        if (oi == obj_index.end()) throw UnknownId("unknown object id '" + obj + "'");
        if (pi == prop_index.end()) throw UnknownId("unknown property id '" + prop + "'");
        ctx.rows[oi->second].set(pi->second);
        ctx.cols[pi->second].set(oi->second);
    }
    return ctx;
}

std::size_t FormalContext::object_index(const std::string& id) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == id) return i;
    throw UnknownId("unknown object id '" + id + "'");
}

std::size_t FormalContext::property_index(const std::string& id) const {
    for (std::size_t i = 0; i < properties.size(); ++i)
        if (properties[i] == id) return i;
    throw UnknownId("unknown property id '" + id + "'");
}

std::size_t FormalContext::incidence_count() const {
    std::size_t total = 0;
    for (const auto& row : rows) total += row.count();
    return total;
}

namespace {

Bitset objects_with_all(const FormalContext& ctx, const Bitset& props) {
    Bitset ext(ctx.objects.size());
    for (std::size_t g = 0; g < ctx.objects.size(); ++g)
        if (props.is_subset_of(ctx.rows[g])) ext.set(g);
    return ext;
}

Bitset props_common_to(const FormalContext& ctx, const Bitset& objs) {
    Bitset intent(ctx.properties.size());
    intent.set_all();
    for (std::size_t g = 0; g < ctx.objects.size(); ++g)
        if (objs.test(g)) intent &= ctx.rows[g];
    return intent;
}

Bitset intent_closure(const FormalContext& ctx, const Bitset& intent) {
    return props_common_to(ctx, objects_with_all(ctx, intent));
}

std::vector<std::string> ids_of(const std::vector<std::string>& universe, const Bitset& bits) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (bits.test(i)) out.push_back(universe[i]);
    return out;
}

}  // namespace

std::set<std::string> prime_props(const FormalContext& ctx, const std::set<std::string>& objs) {
    Bitset bits(ctx.objects.size());
    for (const auto& id : objs) bits.set(ctx.object_index(id));
    const Bitset intent = props_common_to(ctx, bits);
    std::set<std::string> out;
    for (std::size_t i = 0; i < ctx.properties.size(); ++i)
        if (intent.test(i)) out.insert(ctx.properties[i]);
    return out;
}

std::set<std::string> prime_objects(const FormalContext& ctx,
                                    const std::set<std::string>& props) {
    Bitset bits(ctx.properties.size());
    for (const auto& id : props) bits.set(ctx.property_index(id));
    const Bitset extent = objects_with_all(ctx, bits);
    std::set<std::string> out;
    for (std::size_t i = 0; i < ctx.objects.size(); ++i)
        if (extent.test(i)) out.insert(ctx.objects[i]);
    return out;
}

std::vector<Concept> enumerate_concepts(const FormalContext& ctx) {
    const std::size_t m = ctx.properties.size();
    std::vector<std::pair<Bitset, Bitset>> closed;  // (extent, intent)

    // Lectic closure stepping over intents: start from the closure of the
    // empty property set and repeatedly apply the canonical "+i" step.
    Bitset intent = intent_closure(ctx, Bitset(m));
    for (;;) {
        closed.emplace_back(objects_with_all(ctx, intent), intent);
        if (intent.count() == m) break;
        bool advanced = false;
        for (std::size_t i = m; i-- > 0;) {
            if (intent.test(i)) continue;
            Bitset candidate = intent.prefix(i);
            candidate.set(i);
            Bitset next = intent_closure(ctx, candidate);
            // Canonical iff the closure adds nothing below i.
            if (next.prefix_equals(intent, i)) {
                intent = next;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }

    std::vector<Concept> concepts;
    concepts.reserve(closed.size());
    for (const auto& [extent, in] : closed)
        concepts.push_back(Concept{ids_of(ctx.objects, extent), ids_of(ctx.properties, in)});

    std::sort(concepts.begin(), concepts.end(), [](const Concept& a, const Concept& b) {
        if (a.extent.size() != b.extent.size()) return a.extent.size() > b.extent.size();
        return a.extent < b.extent;
    });
    return concepts;
}

std::vector<Concept> proper_concepts(const std::vector<Concept>& concepts) {
    std::vector<Concept> out;
    for (const auto& c : concepts)
        if (c.proper()) out.push_back(c);
    return out;
}

Lattice build_lattice(std::vector<Concept> concepts) {
    std::sort(concepts.begin(), concepts.end(), [](const Concept& a, const Concept& b) {
        if (a.extent.size() != b.extent.size()) return a.extent.size() > b.extent.size();
        return a.extent < b.extent;
    });

    const std::size_t n = concepts.size();
    std::vector<std::set<std::string>> extents(n);
    for (std::size_t i = 0; i < n; ++i)
        extents[i] = std::set<std::string>(concepts[i].extent.begin(), concepts[i].extent.end());

    auto strictly_contains = [&](std::size_t big, std::size_t small) {
        if (extents[big].size() <= extents[small].size()) return false;
        return std::includes(extents[big].begin(), extents[big].end(), extents[small].begin(),
                             extents[small].end());
    };

    Lattice lattice;
    lattice.concepts = std::move(concepts);
    for (std::size_t parent = 0; parent < n; ++parent) {
        for (std::size_t child = 0; child < n; ++child) {
            if (!strictly_contains(parent, child)) continue;
            bool covered = true;
            for (std::size_t mid = 0; mid < n; ++mid) {
                if (mid == parent || mid == child) continue;
                if (strictly_contains(parent, mid) && strictly_contains(mid, child)) {
                    covered = false;
                    break;
                }
            }
            if (covered) lattice.covers.insert({parent, child});
        }
    }
    return lattice;
}

FormalContext read_cxt(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    std::size_t pos = 0;
    auto next_nonempty = [&]() -> const std::string* {
        while (pos < lines.size() && lines[pos].empty()) ++pos;
        return pos < lines.size() ? &lines[pos++] : nullptr;
    };

    const std::string* header = next_nonempty();
    if (!header || *header != "B") throw CxtFormatError("missing 'B' header");

    auto parse_count = [&](const std::string* s) -> long {
        if (!s) throw CxtFormatError("missing object/property counts");
        try {
            std::size_t used = 0;
            long value = std::stol(*s, &used);
            if (used != s->size() || value < 0) throw std::invalid_argument("count");
            return value;
        } catch (const std::exception&) {
            throw CxtFormatError("bad count line '" + *s + "'");
        }
    };

    // An optional context-name line may sit between the header and counts.
    const std::string* first = next_nonempty();
    long object_count;
    try {
        object_count = parse_count(first);
    } catch (const CxtFormatError&) {
        first = next_nonempty();
        object_count = parse_count(first);
    }
    const long property_count = parse_count(next_nonempty());

    std::vector<std::string> objects;
    std::vector<std::string> properties;
    for (long i = 0; i < object_count; ++i) {
        const std::string* name = next_nonempty();
        if (!name) throw CxtFormatError("missing object name");
        objects.push_back(*name);
    }
    for (long i = 0; i < property_count; ++i) {
        const std::string* name = next_nonempty();
        if (!name) throw CxtFormatError("missing property name");
        properties.push_back(*name);
    }

    std::vector<std::pair<std::string, std::string>> incidence;
    // Zero properties means every row is blank; there is nothing to read.
    for (long g = 0; property_count > 0 && g < object_count; ++g) {
        const std::string* row = next_nonempty();
        if (!row) throw CxtFormatError("missing incidence row");
        if (static_cast<long>(row->size()) < property_count)
            throw CxtFormatError("incidence row too short: '" + *row + "'");
        for (long p = 0; p < property_count; ++p) {
            const char c = (*row)[p];
            if (c == 'X' || c == 'x')
                incidence.emplace_back(objects[g], properties[p]);
            else if (c != '.')
                throw CxtFormatError("bad incidence character '" + std::string(1, c) + "'");
        }
    }
    return FormalContext::create(std::move(objects), std::move(properties), incidence);
}

void write_cxt(std::ostream& out, const FormalContext& ctx) {
    out << "B\n\n" << ctx.objects.size() << '\n' << ctx.properties.size() << "\n\n";
    for (const auto& name : ctx.objects) out << name << '\n';
    for (const auto& name : ctx.properties) out << name << '\n';
    for (const auto& row : ctx.rows) {
        for (std::size_t p = 0; p < ctx.properties.size(); ++p)
            out << (row.test(p) ? 'X' : '.');
        out << '\n';
    }
}

}  // namespace xray::fca
