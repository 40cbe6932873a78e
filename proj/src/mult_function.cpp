#include "pscat/mult_function.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace pscat {

namespace {

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool MultFunction::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

void MultFunction::add(const LocalField& K, int m, std::int64_t u, const Scalar& v) {
    std::int64_t mod = K.padic().pow(static_cast<int>(level_));
    std::int64_t r = level_ == 0 ? 1 : pmod(u, mod);
    if (level_ > 0 && r % static_cast<std::int64_t>(K.p()) == 0)
        throw std::invalid_argument("cell residue is not a unit");
    auto [it, inserted] = entries_.try_emplace({m, r}, v);
    if (!inserted) it->second += v;
}

Scalar MultFunction::eval(const LocalField& K, int m, std::int64_t u) const {
    std::int64_t mod = K.padic().pow(static_cast<int>(level_));
    std::int64_t r = level_ == 0 ? 1 : pmod(u, mod);
    auto it = entries_.find({m, r});
    return it == entries_.end() ? Scalar() : it->second;
}

MultFunction MultFunction::refined(const LocalField& K, unsigned level) const {
    if (level < level_) throw std::invalid_argument("cannot refine to a coarser level");
    if (level == level_) return *this;
    MultFunction out(level);
    std::int64_t old_mod = K.padic().pow(static_cast<int>(level_));
    std::int64_t new_mod = K.padic().pow(static_cast<int>(level));
    for (const auto& [key, v] : entries_) {
        std::int64_t base = level_ == 0 ? 0 : key.second;
        for (std::int64_t u = base; u < new_mod; u += old_mod) {
            if (u % static_cast<std::int64_t>(K.p()) == 0) continue;
            out.entries_[{key.first, u}] = v;
        }
    }
    return out;
}

MultFunction MultFunction::pruned() const {
    MultFunction out(level_);
    for (const auto& [k, v] : entries_)
        if (!v.is_zero()) out.entries_.emplace(k, v);
    return out;
}

MultFunction MultFunction::operator+(const MultFunction& g) const {
    if (g.level_ != level_) throw std::invalid_argument("level mismatch; refine first");
    MultFunction out = *this;
    for (const auto& [k, v] : g.entries_) {
        auto [it, inserted] = out.entries_.try_emplace(k, v);
        if (!inserted) it->second += v;
    }
    return out;
}

MultFunction MultFunction::scaled(const Scalar& c) const {
    MultFunction out(level_);
    for (const auto& [k, v] : entries_) out.entries_.emplace(k, c * v);
    return out;
}

bool MultFunction::equals(const LocalField& K, const MultFunction& g) const {
    unsigned L = std::max(level_, g.level_);
    auto a = refined(K, L).pruned();
    auto b = g.refined(K, L).pruned();
    if (a.entries_.size() != b.entries_.size()) return false;
    for (const auto& [k, v] : a.entries_) {
        auto it = b.entries_.find(k);
        if (it == b.entries_.end() || it->second != v) return false;
    }
    return true;
}

MultFunction MultFunction::inverted(const LocalField& K) const {
    MultFunction out(level_);
    for (const auto& [k, v] : entries_) {
        std::int64_t ui = level_ == 0 ? 1 : K.padic().unit_inverse(k.second, static_cast<int>(level_));
        out.entries_.emplace(Key{-k.first, ui}, v);
    }
    return out;
}

std::pair<MultFunction, MultFunction> MultFunction::split_at_unit_circle() const {
    MultFunction outer(level_), inner(level_);
    for (const auto& [k, v] : entries_) (k.first >= 0 ? outer : inner).entries_.emplace(k, v);
    return {outer, inner};
}

Scalar MultFunction::integral(const LocalField& K) const {
    Scalar sum;
    for (const auto& [k, v] : entries_) sum += v;
    return sum.scaled(Rational(1, static_cast<unsigned long>(K.phi(level_))));
}

int MultFunction::min_m() const {
    int r = INT_MAX;
    for (const auto& [k, v] : entries_)
        if (!v.is_zero()) r = std::min(r, k.first);
    return r;
}

int MultFunction::max_m() const {
    int r = INT_MIN;
    for (const auto& [k, v] : entries_)
        if (!v.is_zero()) r = std::max(r, k.first);
    return r;
}

MultFunction MultFunction::cell(const LocalField& K, unsigned level, int m, std::int64_t u,
                                const Scalar& v) {
    MultFunction out(level);
    out.add(K, m, u, v);
    return out;
}

MultFunction MultFunction::character_on_units(const LocalField& K, const UnitCharacter& chi) {
    MultFunction out(chi.e);
    for (std::int64_t u : K.unit_residues(chi.e)) out.add(K, 0, u, K.char_eval(chi, u));
    return out;
}

MultFunction MultFunction::sphere(int m) {
    MultFunction out(0);
    out.entries_.emplace(Key{m, 1}, Scalar(1));
    return out;
}

}  // namespace pscat
