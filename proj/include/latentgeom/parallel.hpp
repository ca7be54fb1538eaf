#pragma once

#include <cstddef>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latentgeom::parallel {

enum class Exec { Serial, OpenMp };

inline Exec default_exec() {
#ifdef _OPENMP
    return Exec::OpenMp;
#else
    return Exec::Serial;
#endif
}

// Work is always cut into a fixed number of chunks, independent of the
// thread count. Each chunk owns a derived RNG substream and a private
// output slot, and partial results are combined in chunk order, so serial
// and parallel execution produce bit-identical results.
inline constexpr int kDefaultChunks = 256;

struct ChunkRange {
    std::size_t begin;
    std::size_t end;
};

inline ChunkRange chunk_range(std::size_t n_items, int n_chunks, int chunk) {
    const auto nc = static_cast<std::size_t>(n_chunks);
    const auto c = static_cast<std::size_t>(chunk);
    return {n_items * c / nc, n_items * (c + 1) / nc};
}

// fn(chunk_index, begin_item, end_item); the same callable runs on both
// paths so the generated code is identical.
template <class Fn>
void for_each_chunk(std::size_t n_items, int n_chunks, Exec exec, Fn&& fn) {
    if (exec == Exec::OpenMp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < n_chunks; ++c) {
            const auto r = chunk_range(n_items, n_chunks, c);
            fn(c, r.begin, r.end);
        }
        return;
#endif
    }
    for (int c = 0; c < n_chunks; ++c) {
        const auto r = chunk_range(n_items, n_chunks, c);
        fn(c, r.begin, r.end);
    }
}

// Kahan compensated summation.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

} // namespace latentgeom::parallel
