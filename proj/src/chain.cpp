#include "kym/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kym {

namespace {
constexpr double kPi = std::numbers::pi;

void check_site(const ChainGeometry& geometry, int alpha) {
    if (alpha < 1 || alpha > geometry.n_sites)
        throw std::invalid_argument("site index " + std::to_string(alpha) +
                                    " outside 1.." +
                                    std::to_string(geometry.n_sites));
}
} // namespace

ChainGeometry::ChainGeometry(int n) : n_sites(n) {
    if (n < 1 || n > 32)
        throw std::invalid_argument("chain size must be in 1..32, got " +
                                    std::to_string(n));
}

Complex ChainGeometry::site_coordinate(int alpha) const {
    check_site(*this, alpha);
    const double arg = 2.0 * kPi * alpha / n_sites;
    return {std::cos(arg), std::sin(arg)};
}

double chord_distance_squared(const ChainGeometry& geometry, int alpha, int beta) {
    check_site(geometry, alpha);
    check_site(geometry, beta);
    if (alpha == beta)
        throw std::invalid_argument("chord distance requires distinct sites");
    const double s = std::sin(kPi * (alpha - beta) / geometry.n_sites);
    return 4.0 * s * s;
}

Configuration Configuration::pack(const std::vector<Occ>& sites) {
    Configuration c;
    for (std::size_t a = 0; a < sites.size(); ++a)
        c.word |= static_cast<std::uint64_t>(sites[a]) << (2 * a);
    return c;
}

std::vector<Occ> Configuration::unpack(int n_sites) const {
    std::vector<Occ> sites(n_sites);
    for (int a = 0; a < n_sites; ++a)
        sites[a] = static_cast<Occ>((word >> (2 * a)) & 3u);
    return sites;
}

int Configuration::count(int n_sites, Occ what) const {
    int c = 0;
    for (int a = 0; a < n_sites; ++a)
        if (static_cast<Occ>((word >> (2 * a)) & 3u) == what) ++c;
    return c;
}

std::size_t SectorBasis::index_of(std::uint64_t word) const {
    auto it = std::lower_bound(words.begin(), words.end(), word);
    if (it == words.end() || *it != word)
        throw std::invalid_argument("configuration not in sector");
    return static_cast<std::size_t>(it - words.begin());
}

bool SectorBasis::contains(std::uint64_t word) const {
    return std::binary_search(words.begin(), words.end(), word);
}

namespace {

// Fill `sites` from position `a` on with `holes` holes and `ups` up spins
// still to place (the rest are down spins), recursing site by site. Codes are
// emitted low-site-first, so visiting the highest site in ascending code
// order would not give sorted words; we sort once at the end instead.
void emit_sector(std::vector<Occ>& sites, int a, int holes, int ups,
                 std::vector<std::uint64_t>& out) {
    const int n = static_cast<int>(sites.size());
    const int remaining = n - a;
    if (holes + ups > remaining) return;
    if (a == n) {
        out.push_back(Configuration::pack(sites).word);
        return;
    }
    if (holes > 0) {
        sites[a] = Occ::Hole;
        emit_sector(sites, a + 1, holes - 1, ups, out);
    }
    if (ups > 0) {
        sites[a] = Occ::Up;
        emit_sector(sites, a + 1, holes, ups - 1, out);
    }
    if (remaining - holes - ups > 0) {
        sites[a] = Occ::Down;
        emit_sector(sites, a + 1, holes, ups, out);
    }
}

} // namespace

SectorBasis enumerate_sector(const ChainGeometry& geometry, const SectorKey& key) {
    const int n = geometry.n_sites;
    if (key.n_holes < 0 || key.n_up < 0 || key.n_holes + key.n_up > n)
        throw std::invalid_argument("invalid sector key Q=" +
                                    std::to_string(key.n_holes) + ", M_up=" +
                                    std::to_string(key.n_up) + " for N=" +
                                    std::to_string(n));
    SectorBasis basis{geometry, key, {}};
    basis.words.reserve(binomial(n, key.n_holes) *
                        binomial(n - key.n_holes, key.n_up));
    std::vector<Occ> sites(n, Occ::Down);
    emit_sector(sites, 0, key.n_holes, key.n_up, basis.words);
    std::sort(basis.words.begin(), basis.words.end());
    return basis;
}

std::vector<std::uint64_t> enumerate_full_space(int n_sites) {
    std::vector<std::uint64_t> words{0};
    words.reserve(static_cast<std::size_t>(std::pow(3.0, n_sites)) + 1);
    // Extend site by site from the high end so ascending order is preserved.
    for (int a = n_sites - 1; a >= 0; --a) {
        std::vector<std::uint64_t> next;
        next.reserve(words.size() * 3);
        for (unsigned code = 0; code < 3; ++code)
            for (std::uint64_t w : words)
                next.push_back(w | (static_cast<std::uint64_t>(code) << (2 * a)));
        words = std::move(next);
    }
    std::sort(words.begin(), words.end());
    return words;
}

std::uint64_t translate_word(std::uint64_t word, int n_sites) {
    const int bits = 2 * n_sites;
    const std::uint64_t mask =
        bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    return ((word << 2) | (word >> (bits - 2))) & mask;
}

StateVector apply_translation(const StateVector& state) {
    const SectorBasis& basis = *state.basis;
    StateVector out{state.basis, Eigen::VectorXcd::Zero(basis.size())};
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const std::uint64_t shifted =
            translate_word(basis.words[j], basis.geometry.n_sites);
        out.amplitudes[static_cast<Eigen::Index>(basis.index_of(shifted))] =
            state.amplitudes[static_cast<Eigen::Index>(j)];
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i)
        result = result * static_cast<std::uint64_t>(n - k + i) /
                 static_cast<std::uint64_t>(i);
    return result;
}

} // namespace kym
