#ifndef FHS_CONSTRUCTIONS_HPP
#define FHS_CONSTRUCTIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fhs/core.hpp"

namespace fhs::construct {

// Z/pZ arithmetic for prime p. Extension fields are intentionally not
// modelled; every parameter set this tool targets uses a prime channel
// count, and callers only touch this through the interface below.
class PrimeField {
  public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b % p_) % p_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;
    std::uint64_t inv(std::uint64_t a) const; // throws on a == 0

  private:
    std::uint64_t p_;
};

// The length-v code of evaluations of all polynomials of degree < t_prime
// over F_p at the points 0, 1, .., v-1, in lexicographic coefficient order
// (constant coefficient most significant). k = p^t_prime rows, minimum
// distance v - t_prime + 1. Rows can be generated individually, so schemes
// too large to hold in memory can still be analysed through certificates.
class MdsCode {
  public:
    MdsCode(unsigned v, unsigned t_prime, std::uint64_t p);

    unsigned v() const { return v_; }
    unsigned t_prime() const { return t_prime_; }
    std::uint64_t p() const { return p_; }
    BigInt row_count() const;
    unsigned distance() const { return v_ - t_prime_ + 1; }

    FHSequence row(std::uint64_t index) const;
    // Coefficients (c_0 .. c_{t'-1}) of the row's polynomial.
    std::vector<std::uint64_t> coefficients(std::uint64_t index) const;

    // Materializes all rows; refuses when k exceeds max_rows.
    Scheme materialize(std::uint64_t max_rows = 1000000) const;

  private:
    unsigned v_;
    unsigned t_prime_;
    std::uint64_t p_;
    PrimeField field_;
};

// Materialized MDS scheme with its distance certificate in the metadata.
Scheme construct_mds_scheme(unsigned v, unsigned t_prime, std::uint64_t p,
                            std::uint64_t max_rows = 1000000);

// Reed-Solomon cover-free construction: degree bound ceil(v / w^2), which
// makes d = v - t' + 1 strictly exceed v (1 - 1/w^2).
Scheme construct_rs_cfc(unsigned v, unsigned w, std::uint64_t p, std::uint64_t max_rows = 1000000);
unsigned rs_cfc_degree_bound(unsigned v, unsigned w);

enum class DistanceMethod { Exhaustive, CertificateSampled };

struct MinDistanceReport {
    unsigned distance = 0;
    // A pair achieving the distance. Always present for exhaustive scans;
    // in certificate mode only when a sampled pair or the construction's
    // algebraic witness realizes it.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    DistanceMethod method = DistanceMethod::Exhaustive;
    std::uint64_t sampled_pairs = 0; // CertificateSampled only
};

// Exact minimum pairwise Hamming distance when k^2 fits the budget;
// otherwise falls back to the scheme's distance certificate, cross-checked
// on `sample_pairs` random pairs. Refuses when neither applies.
MinDistanceReport verify_min_distance(const Scheme& scheme, std::uint64_t budget = 1000000,
                                      std::uint64_t sample_pairs = 100000, std::uint64_t seed = 0,
                                      unsigned threads = 1);

struct OAWitness {
    bool pass = false;
    unsigned strength = 0;
    std::uint64_t index_lambda = 0;
    // On failure: the offending column tuple, symbol tuple, and its count.
    std::optional<std::vector<std::size_t>> failing_columns;
    std::optional<std::vector<Channel>> failing_tuple;
    std::optional<std::uint64_t> failing_count;
    std::optional<std::string> note; // arithmetic precondition failures
};

// Checks every t'-column projection of the k x v array for exact tuple
// counts lambda. Fails fast with a witness.
OAWitness verify_orthogonal_array(const Scheme& scheme, unsigned t_prime, std::uint64_t lambda,
                                  unsigned threads = 1);

struct LatinSquare {
    unsigned order = 0;
    std::vector<std::vector<Channel>> grid;

    void validate() const; // rows and columns must be permutations of 0..order-1
};

LatinSquare cyclic_latin_square(unsigned v);
LatinSquare latin_shift(const LatinSquare& square, Channel x);

// Deterministic keyed slot-key source: a fixed 64-bit mixing construction
// over (key, session, slot, retry counter) with rejection sampling into
// 0..modulus-1. The construction is pinned bit-exactly in
// docs/slot-key-prf.md; it is a test vehicle, not a vetted cryptographic
// PRF, and deployments are expected to substitute one behind this
// interface.
struct SlotKeySource {
    std::array<std::uint8_t, 16> key{};
    std::uint64_t session = 0;
    unsigned modulus = 1; // the Latin square order v

    static SlotKeySource from_hex_key(const std::string& hex, std::uint64_t session, unsigned modulus);
};

Channel slot_key(const SlotKeySource& source, std::uint64_t t);

// k = v sequences over a library of m = v channels; sequence i at slot t is
// (L[i][t] + slot_key(t)) mod v. Every column is a permutation of 0..v-1.
Scheme generate_srls_scheme(const LatinSquare& square, const SlotKeySource& source);

struct MitigationReport {
    bool m1_pass = false; // active subset strictly smaller than the scheme
    bool m2_pass = false; // every slot has uniform channel multiplicities
    std::optional<std::size_t> m2_witness_slot;
    bool m3_pass = false; // no non-uniform transition entry
    std::optional<std::pair<std::size_t, Channel>> m3_witness;
    std::size_t m3_vacuous_entries = 0;
};

MitigationReport mitigation_report(const Scheme& scheme, const Rational& usage_fraction);

} // namespace fhs::construct

#endif
