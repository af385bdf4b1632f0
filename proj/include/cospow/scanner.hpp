#pragma once

#include <optional>
#include <vector>

#include "cospow/curve.hpp"
#include "cospow/precision.hpp"

namespace cospow {

struct ScanConfig {
    long long start = 1;
    long long end = 1;
    double gamma = 1.0;
    std::optional<double> alpha;    // when set, keep only values > alpha
    long long chunk = 4096;         // partition size for the worker pool
    unsigned threads = 0;           // 0 = hardware concurrency
    std::optional<long> min_bits;   // raise the per-value precision floor
};

// Evaluates a_n over [start, end], ascending n. Output is identical for
// any chunk size or thread count. Unfiltered scans above 10^7 indices are
// rejected to bound memory; use the alpha filter instead.
std::vector<SeqValue> scan_range(const ScanConfig& config);

struct PeakGroup {
    std::vector<long long> indices;  // ascending, all with value > alpha
    std::optional<Progression> progression;  // present when >= 3 members
    double max_value = 0.0;
};

// Clusters above-threshold indices: consecutive indices at distance
// <= gap belong to one group. Groups are reported ascending by first index.
std::vector<PeakGroup> detect_peaks(const std::vector<SeqValue>& values, double alpha,
                                    long long gap);

// p = gcd of consecutive differences, d = smallest index. Needs >= 3
// strictly ascending indices.
Progression infer_progression(const std::vector<long long>& indices, double gamma);

struct PersistenceReport {
    Progression progression;
    long long horizon = 0;
    long long holds_to = 0;  // largest k with value > alpha at every step <= k
    std::optional<long long> first_failure;  // holds_to + 1 when holds_to < horizon
    std::vector<double> values;        // direct evaluation at k = 1..horizon
    std::vector<double> lower_bounds;  // 1 - (k*rp + rd)^2 (pk+d)^gamma / 2
};

// Walks n_k = p*k + d for k = 1..horizon by direct evaluation; the
// conservative quadratic lower bound is reported alongside.
PersistenceReport classify_persistence(const Progression& prog, double alpha, long long horizon);

}  // namespace cospow
