#pragma once

// Geometry and configuration space of a periodic N-site chain whose sites
// hold an up spin, a down spin, or a hole. Sites live on the unit circle at
// eta_alpha = exp(i 2 pi alpha / N), alpha = 1..N; interfaces are 1-based to
// keep cross-checks against the closed formulas readable, internal loops are
// 0-based.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace kym {

using Complex = std::complex<double>;

// Site occupation, two bits per site.
enum class Occ : unsigned { Hole = 0, Up = 1, Down = 2 };

struct ChainGeometry {
    int n_sites = 0;

    explicit ChainGeometry(int n);

    // eta_alpha, alpha = 1..N.
    Complex site_coordinate(int alpha) const;
};

// |eta_alpha - eta_beta|^2 = 4 sin^2(pi (alpha-beta) / N). Throws
// std::invalid_argument for alpha == beta or sites outside 1..N.
double chord_distance_squared(const ChainGeometry& geometry, int alpha, int beta);

// A configuration packs the N site contents into one 64-bit word: site alpha
// occupies bits [2(alpha-1), 2(alpha-1)+1] with 00 = hole, 01 = up spin,
// 10 = down spin. Canonical order over configurations = ascending word value.
struct Configuration {
    std::uint64_t word = 0;

    Configuration() = default;
    explicit Configuration(std::uint64_t w) : word(w) {}

    static Configuration pack(const std::vector<Occ>& sites);
    std::vector<Occ> unpack(int n_sites) const;

    Occ occupation(int alpha) const {   // 1-based
        return static_cast<Occ>((word >> (2 * (alpha - 1))) & 3u);
    }
    int count(int n_sites, Occ what) const;
    int n_up(int n_sites) const { return count(n_sites, Occ::Up); }
    int n_down(int n_sites) const { return count(n_sites, Occ::Down); }
    int n_holes(int n_sites) const { return count(n_sites, Occ::Hole); }

    bool operator==(const Configuration& o) const { return word == o.word; }
};

// Conserved quantum numbers of a sector: hole count Q and up-spin count M_up
// (2 Sz = M_up - (N - Q - M_up)).
struct SectorKey {
    int n_holes = 0;
    int n_up = 0;

    bool operator==(const SectorKey& o) const {
        return n_holes == o.n_holes && n_up == o.n_up;
    }
};

// All configurations of a sector in canonical (ascending packed word) order,
// with O(log size) index lookup.
struct SectorBasis {
    ChainGeometry geometry;
    SectorKey key;
    std::vector<std::uint64_t> words;

    std::size_t size() const { return words.size(); }
    Configuration config(std::size_t i) const { return Configuration(words[i]); }
    // Position of `word` in the basis; throws std::invalid_argument if the
    // configuration does not belong to the sector.
    std::size_t index_of(std::uint64_t word) const;
    bool contains(std::uint64_t word) const;
};

SectorBasis enumerate_sector(const ChainGeometry& geometry, const SectorKey& key);

// Every valid configuration of the full 3^N space, ascending word order.
std::vector<std::uint64_t> enumerate_full_space(int n_sites);

// Complex amplitudes over a sector basis. Unnormalized by design: the
// polynomial wave-function values themselves are the objects of interest.
struct StateVector {
    const SectorBasis* basis = nullptr;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

// One-site translation T: site alpha -> alpha + 1 (mod N), a pure permutation
// with no extra sign or phase. On packed words this is a 2-bit left rotation.
std::uint64_t translate_word(std::uint64_t word, int n_sites);

// T acting on states: (T psi)[T c] = psi[c]. Unitary, T^N = identity.
StateVector apply_translation(const StateVector& state);

std::uint64_t binomial(int n, int k);

} // namespace kym
