#include "cospow/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "cospow/errors.hpp"

namespace cospow {

namespace {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");
}

SeqValue eval_one(long long n, double gamma, const std::optional<long>& min_bits) {
    PrecisionBudget b = required_precision(n, gamma);
    if (min_bits && *min_bits > b.bits) b.bits = *min_bits;
    return seq_value(n, gamma, b);
}

}  // namespace

std::vector<SeqValue> scan_range(const ScanConfig& config) {
    if (config.start < 1) throw DomainError("start must be >= 1");
    if (config.start > config.end) throw DomainError("start must be <= end");
    if (config.chunk < 1) throw DomainError("chunk must be >= 1");
    if (!(config.gamma >= 0.0)) throw DomainError("gamma must be >= 0");
    if (config.alpha) validate_alpha(*config.alpha);

    unsigned long long count =
        static_cast<unsigned long long>(config.end - config.start) + 1;
    if (!config.alpha && count > 10'000'000ULL)
        throw ResourceLimitError("unfiltered scans are limited to 10^7 indices; set alpha");

    unsigned long long nchunks = (count + config.chunk - 1) / static_cast<unsigned long long>(config.chunk);
    std::vector<std::vector<SeqValue>> parts(nchunks);

    unsigned nthreads = config.threads ? config.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, nchunks));

    std::atomic<unsigned long long> next{0};
    auto worker = [&] {
        for (;;) {
            unsigned long long c = next.fetch_add(1);
            if (c >= nchunks) return;
            long long lo = config.start + static_cast<long long>(c) * config.chunk;
            long long hi = std::min(config.end, lo + config.chunk - 1);
            auto& out = parts[c];
            for (long long n = lo; n <= hi; ++n) {
                SeqValue v = eval_one(n, config.gamma, config.min_bits);
                if (!config.alpha || v.value > *config.alpha) out.push_back(v);
            }
        }
    };

    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<SeqValue> merged;
    for (auto& p : parts) merged.insert(merged.end(), p.begin(), p.end());
    return merged;
}

std::vector<PeakGroup> detect_peaks(const std::vector<SeqValue>& values, double alpha,
                                    long long gap) {
    validate_alpha(alpha);
    if (gap < 1) throw DomainError("gap must be >= 1");

    std::vector<PeakGroup> groups;
    for (const auto& v : values) {
        if (!(v.value > alpha)) continue;
        if (groups.empty() || v.n - groups.back().indices.back() > gap) {
            groups.emplace_back();
        }
        groups.back().indices.push_back(v.n);
        groups.back().max_value = std::max(groups.back().max_value, v.value);
    }
    double gamma = values.empty() ? 1.0 : values.front().gamma;
    for (auto& g : groups)
        if (g.indices.size() >= 3) g.progression = infer_progression(g.indices, gamma);
    return groups;
}

Progression infer_progression(const std::vector<long long>& indices, double gamma) {
    if (indices.size() < 3) throw FitError("need at least 3 indices to infer a progression");
    long long p = 0;
    for (std::size_t i = 1; i < indices.size(); ++i) {
        long long diff = indices[i] - indices[i - 1];
        if (diff <= 0) throw DomainError("indices must be strictly ascending");
        p = std::gcd(p, diff);
    }
    return make_progression(p, indices.front(), gamma);
}

PersistenceReport classify_persistence(const Progression& prog, double alpha,
                                       long long horizon) {
    validate_alpha(alpha);
    if (horizon < 1) throw DomainError("horizon must be >= 1");

    PersistenceReport report;
    report.progression = prog;
    report.horizon = horizon;
    report.values.reserve(horizon);
    report.lower_bounds.reserve(horizon);

    bool failed = false;
    for (long long k = 1; k <= horizon; ++k) {
        long long n = prog.p * k + prog.d;
        double v = seq_value(n, prog.gamma).value;
        double r = static_cast<double>(k) * prog.rp + prog.rd;
        double bound = 1.0 - r * r * std::pow(static_cast<double>(n), prog.gamma) / 2.0;
        report.values.push_back(v);
        report.lower_bounds.push_back(bound);
        if (!failed && v > alpha) {
            report.holds_to = k;
        } else if (!failed) {
            failed = true;
            report.first_failure = k;
        }
    }
    return report;
}

}  // namespace cospow
