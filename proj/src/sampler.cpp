#include "acredit/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace acredit {

namespace {

constexpr std::uint64_t kChunkSize = 1u << 14;

// splitmix64 finalizer; decorrelates per-chunk engine seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t chunk) {
    return mix64(master ^ mix64(chunk + 1));
}

// 53-bit uniform in [0, 1); implementation-independent given the engine.
double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void sample_into(const std::vector<int>& prefix, std::mt19937_64& rng,
                 std::vector<double>& spacings, std::vector<double>& out) {
    const int m = static_cast<int>(prefix.size());
    double total = 0.0;
    do {
        total = 0.0;
        for (int i = 0; i < m; ++i) {
            spacings[i] = -std::log1p(-uniform53(rng));
            total += spacings[i];
        }
    } while (total == 0.0);
    double tail = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        tail += spacings[k] / total / prefix[k];
        out[k] = tail;
    }
}

struct MomentPartial {
    std::vector<double> sum;
    std::vector<double> sum_sq;
};

MomentPartial run_moment_chunk(const std::vector<int>& prefix, std::uint64_t seed,
                               std::uint64_t count) {
    const size_t m = prefix.size();
    std::mt19937_64 rng(seed);
    std::vector<KahanSum> sum(m), sum_sq(m);
    std::vector<double> spacings(m), draw(m);
    for (std::uint64_t i = 0; i < count; ++i) {
        sample_into(prefix, rng, spacings, draw);
        for (size_t k = 0; k < m; ++k) {
            sum[k].add(draw[k]);
            sum_sq[k].add(draw[k] * draw[k]);
        }
    }
    MomentPartial part;
    part.sum.resize(m);
    part.sum_sq.resize(m);
    for (size_t k = 0; k < m; ++k) {
        part.sum[k] = sum[k].sum;
        part.sum_sq[k] = sum_sq[k].sum;
    }
    return part;
}

// Runs fn(chunk_index) for every chunk, optionally across threads. Chunk
// results must be stored by index so the reduction order is fixed.
template <typename Fn>
void for_each_chunk(std::uint64_t num_chunks, unsigned workers, Fn fn) {
    workers = std::max(1u, workers);
    if (static_cast<std::uint64_t>(workers) > num_chunks) {
        workers = static_cast<unsigned>(num_chunks);
    }
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < num_chunks; ++c) fn(c);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([=] {
            for (std::uint64_t c = t; c < num_chunks; c += workers) fn(c);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

CreditVector sample_credit_vector(const GroupStructure& groups, std::mt19937_64& rng) {
    groups.validate();
    const auto prefix = groups.prefix_counts();
    std::vector<double> spacings(prefix.size());
    CreditVector out{std::vector<double>(prefix.size()), Granularity::PerGroup};
    sample_into(prefix, rng, spacings, out.shares);
    return out;
}

MomentEstimate estimate_moments(const SampleConfig& config) {
    config.groups.validate();
    if (config.num_samples < 1) throw InputError("num_samples must be >= 1");
    const auto prefix = config.groups.prefix_counts();
    const size_t m = prefix.size();
    const std::uint64_t total = config.num_samples;
    const std::uint64_t num_chunks = (total + kChunkSize - 1) / kChunkSize;

    std::vector<MomentPartial> parts(num_chunks);
    for_each_chunk(num_chunks, config.workers, [&](std::uint64_t c) {
        const std::uint64_t count = std::min<std::uint64_t>(kChunkSize, total - c * kChunkSize);
        parts[c] = run_moment_chunk(prefix, chunk_seed(config.seed, c), count);
    });

    std::vector<double> sum(m, 0.0), sum_sq(m, 0.0);
    for (const auto& part : parts) {
        for (size_t k = 0; k < m; ++k) {
            sum[k] += part.sum[k];
            sum_sq[k] += part.sum_sq[k];
        }
    }

    MomentEstimate est;
    est.num_samples = total;
    est.mean.resize(m);
    est.stddev.resize(m);
    est.standard_error.resize(m);
    const double n = static_cast<double>(total);
    for (size_t k = 0; k < m; ++k) {
        est.mean[k] = sum[k] / n;
        double variance = sum_sq[k] / n - est.mean[k] * est.mean[k];
        if (variance < 0.0) variance = 0.0;
        est.stddev[k] = std::sqrt(variance);
        est.standard_error[k] = est.stddev[k] / std::sqrt(n);
    }
    return est;
}

double polytope_volume_closed_form(const GroupStructure& groups) {
    groups.validate();
    const auto prefix = groups.prefix_counts();
    const int m = groups.tiers();
    double volume = 1.0;
    for (int j = 2; j <= m; ++j) volume /= prefix[static_cast<size_t>(j) - 1];
    for (int f = 2; f <= m - 1; ++f) volume /= f;
    return volume;
}

VolumeEstimate estimate_volume(const GroupStructure& groups, std::uint64_t num_samples,
                               std::uint64_t seed, unsigned workers) {
    groups.validate();
    const int m = groups.tiers();
    if (m < 2) {
        throw InputError("volume estimation needs at least two tiers, got " + std::to_string(m));
    }
    if (num_samples < 1) throw InputError("num_samples must be >= 1");

    const auto prefix = groups.prefix_counts();
    std::vector<double> box(static_cast<size_t>(m) - 1);  // box[i-2] = 1/C_i
    double box_volume = 1.0;
    for (int i = 2; i <= m; ++i) {
        box[static_cast<size_t>(i) - 2] = 1.0 / prefix[static_cast<size_t>(i) - 1];
        box_volume *= box[static_cast<size_t>(i) - 2];
    }

    const std::uint64_t num_chunks = (num_samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::uint64_t> accepted_per_chunk(num_chunks, 0);
    for_each_chunk(num_chunks, workers, [&](std::uint64_t c) {
        const std::uint64_t count =
            std::min<std::uint64_t>(kChunkSize, num_samples - c * kChunkSize);
        std::mt19937_64 rng(chunk_seed(seed, c));
        std::vector<double> draw(box.size());
        std::uint64_t accepted = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            for (size_t d = 0; d < box.size(); ++d) draw[d] = uniform53(rng) * box[d];
            bool ordered = true;
            for (size_t d = 1; d < draw.size(); ++d) {
                if (draw[d] > draw[d - 1]) {
                    ordered = false;
                    break;
                }
            }
            if (!ordered) continue;
            double weighted = 0.0;
            for (size_t d = 0; d < draw.size(); ++d) {
                weighted += groups.counts[d + 1] * draw[d];
            }
            const double x1 = (1.0 - weighted) / groups.counts[0];
            if (x1 >= draw[0]) ++accepted;
        }
        accepted_per_chunk[c] = accepted;
    });

    std::uint64_t accepted = 0;
    for (std::uint64_t a : accepted_per_chunk) accepted += a;

    VolumeEstimate est;
    est.num_samples = num_samples;
    est.accepted = accepted;
    const double n = static_cast<double>(num_samples);
    const double rate = static_cast<double>(accepted) / n;
    est.estimate = rate * box_volume;
    est.standard_error = box_volume * std::sqrt(rate * (1.0 - rate) / n);
    return est;
}

}  // namespace acredit
