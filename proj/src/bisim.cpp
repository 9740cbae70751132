#include "spectra/bisim.hpp"

#include <algorithm>

namespace spectra {

const char* bisim_variant_name(BisimVariant v) {
    switch (v) {
        case BisimVariant::Dis: return "pb-dis";
        case BisimVariant::Group: return "pb";
        case BisimVariant::SupInf: return "pb-supinf";
    }
    return "?";
}

Rational group_mass(const Distribution& d, std::span<const char> member) {
    return d.mass(member);
}

namespace {

/// Per-block masses of a distribution; group masses are sums of these.
std::vector<Rational> block_masses(const Distribution& d, const Partition& p) {
    std::vector<Rational> out(p.num_blocks(), Rational(0));
    for (const auto& [s, q] : d.entries) out[p.block_of[s]] += q;
    return out;
}

std::vector<const Distribution*> labeled(const Nplts& m, StateId s, ActionId a) {
    std::vector<const Distribution*> out;
    for (const Transition& t : m.outgoing(s))
        if (t.label == a) out.push_back(&t.target);
    return out;
}

Rational mask_mass(const std::vector<Rational>& bm, std::uint64_t mask) {
    Rational sum(0);
    for (std::size_t b = 0; mask; ++b, mask >>= 1)
        if (mask & 1) sum += bm[b];
    return sum;
}

/// The group masks to quantify over: every nonempty subset of the listed
/// blocks (all blocks, or only the relevant ones when pruning).
std::vector<std::uint64_t> group_masks(const std::vector<std::size_t>& blocks, Budget& budget) {
    if (blocks.size() >= 63)
        throw Error(ErrorCode::ResolutionSpaceTooLarge, "too many blocks for group enumeration");
    std::vector<std::uint64_t> masks;
    for (std::uint64_t sub = 1; sub < (std::uint64_t(1) << blocks.size()); ++sub) {
        budget.charge(1);
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (sub & (std::uint64_t(1) << i)) mask |= std::uint64_t(1) << blocks[i];
        masks.push_back(mask);
    }
    return masks;
}

bool dis_side(const std::vector<std::vector<Rational>>& xs,
              const std::vector<std::vector<Rational>>& ys,
              const std::vector<std::uint64_t>* masks) {
    for (const auto& bx : xs) {
        bool matched = false;
        for (const auto& by : ys) {
            if (masks == nullptr) {
                if (bx == by) { matched = true; break; }
            } else {
                bool all = true;
                for (std::uint64_t g : *masks)
                    if (mask_mass(bx, g) != mask_mass(by, g)) { all = false; break; }
                if (all) { matched = true; break; }
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

bool transfer_holds(const Nplts& m, StateId x, StateId y, const Partition& p, BisimVariant v,
                    Budget& budget, const BisimOptions& opt) {
    if (x == y) return true;
    ActionSet ex = m.enabled_actions(x), ey = m.enabled_actions(y);
    if (v == BisimVariant::SupInf && ex != ey) return false;
    for (ActionId a = 0; a < m.num_actions(); ++a) {
        if (((ex | ey) & (ActionSet(1) << a)) == 0) continue;
        auto dx = labeled(m, x, a), dy = labeled(m, y, a);
        std::vector<std::vector<Rational>> bx, by;
        for (auto* d : dx) bx.push_back(block_masses(*d, p));
        for (auto* d : dy) by.push_back(block_masses(*d, p));

        if (v == BisimVariant::Dis) {
            std::vector<std::uint64_t> masks;
            const std::vector<std::uint64_t>* mp = nullptr;
            if (opt.dis_exhaustive_groups) {
                std::vector<std::size_t> all(p.num_blocks());
                for (std::size_t b = 0; b < p.num_blocks(); ++b) all[b] = b;
                masks = group_masks(all, budget);
                mp = &masks;
            }
            if (!dis_side(bx, by, mp) || !dis_side(by, bx, mp)) return false;
            continue;
        }

        // Blocks to build groups from: all, or those carrying mass under some
        // a-labeled distribution of x or y. A block with zero mass everywhere
        // changes no group mass, so dropping it loses nothing.
        std::vector<std::size_t> base;
        if (opt.prune_groups) {
            std::vector<char> rel(p.num_blocks(), 0);
            for (const auto& bm : bx)
                for (std::size_t b = 0; b < bm.size(); ++b)
                    if (bm[b] > Rational(0)) rel[b] = 1;
            for (const auto& bm : by)
                for (std::size_t b = 0; b < bm.size(); ++b)
                    if (bm[b] > Rational(0)) rel[b] = 1;
            for (std::size_t b = 0; b < p.num_blocks(); ++b)
                if (rel[b]) base.push_back(b);
            if (base.empty()) continue; // no transitions on either side
        } else {
            base.resize(p.num_blocks());
            for (std::size_t b = 0; b < p.num_blocks(); ++b) base[b] = b;
        }

        for (std::uint64_t g : group_masks(base, budget)) {
            std::vector<Rational> vx, vy;
            for (const auto& bm : bx) vx.push_back(mask_mass(bm, g));
            for (const auto& bm : by) vy.push_back(mask_mass(bm, g));
            std::sort(vx.begin(), vx.end());
            std::sort(vy.begin(), vy.end());
            if (v == BisimVariant::Group) {
                vx.erase(std::unique(vx.begin(), vx.end()), vx.end());
                vy.erase(std::unique(vy.begin(), vy.end()), vy.end());
                if (vx != vy) return false;
            } else { // SupInf; enabledness already checked, both sides nonempty
                if (vx.empty() != vy.empty()) return false;
                if (vx.empty()) continue;
                if (vx.front() != vy.front() || vx.back() != vy.back()) return false;
            }
        }
    }
    return true;
}

bool partition_is_bisimulation(const Nplts& m, const Partition& p, BisimVariant v, Budget& budget,
                               const BisimOptions& opt) {
    for (const auto& block : p.blocks)
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = i + 1; j < block.size(); ++j)
                if (!transfer_holds(m, block[i], block[j], p, v, budget, opt)) return false;
    return true;
}

BisimResult decide_bisimilarity(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                                BisimVariant v, Budget& budget, const BisimOptions& opt) {
    auto [am1, am2] = align_alphabets(m1, m2);
    BisimResult r;
    r.union_model = disjoint_union(am1, am2);
    r.u1 = s1;
    r.u2 = static_cast<StateId>(s2 + am1.num_states());
    const Nplts& u = r.union_model;

    Partition p;
    p.blocks.push_back({});
    for (StateId s = 0; s < u.num_states(); ++s) p.blocks[0].push_back(s);
    p.block_of.assign(u.num_states(), 0);

    bool changed = true;
    while (changed) {
        changed = false;
        r.rounds++;
        std::vector<std::vector<StateId>> next;
        for (const auto& block : p.blocks) {
            std::vector<StateId> rest = block;
            while (!rest.empty()) {
                StateId pivot = rest.front();
                std::vector<StateId> cls{pivot}, keep;
                for (std::size_t i = 1; i < rest.size(); ++i) {
                    budget.charge(1);
                    if (transfer_holds(u, pivot, rest[i], p, v, budget, opt))
                        cls.push_back(rest[i]);
                    else
                        keep.push_back(rest[i]);
                }
                next.push_back(std::move(cls));
                rest = std::move(keep);
            }
        }
        if (next.size() != p.blocks.size()) changed = true;
        p.blocks = std::move(next);
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            for (StateId s : p.blocks[b]) p.block_of[s] = static_cast<std::uint32_t>(b);
    }
    r.partition = p;

    if (p.same_block(r.u1, r.u2)) {
        r.verdict = Verdict::equal();
    } else {
        Witness w;
        w.kind = bisim_variant_name(v);
        auto block_line = [&](const char* tag, StateId s) {
            std::string line = std::string(tag) + " block {";
            const auto& blk = p.blocks[p.block_of[s]];
            for (std::size_t i = 0; i < blk.size(); ++i) {
                if (i) line += ", ";
                line += u.state_name(blk[i]);
            }
            return line + "}";
        };
        w.lines = {"states in different blocks after " + std::to_string(r.rounds) + " rounds",
                   block_line("left", r.u1), block_line("right", r.u2)};
        r.verdict = Verdict::distinguished(std::move(w));
    }
    return r;
}

} // namespace spectra
