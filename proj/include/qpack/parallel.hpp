#pragma once

#include <cstddef>
#include <cstdint>

namespace qpack {

// Sweep kernels run every grid point independently. The serial path is the
// reference; the OpenMP path must reproduce it bit for bit, which holds as
// long as no floating-point reduction crosses grid points.
enum class Execution
{
    serial,
    parallel,
};

template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn &&fn)
{
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
        fn(static_cast<std::size_t>(i));
    }
}

} // namespace qpack
