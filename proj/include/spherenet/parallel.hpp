#pragma once

#include <cstddef>
#include <functional>

namespace spherenet {

// Worker count: SPHERENET_THREADS when set to a positive integer, else hardware concurrency.
unsigned thread_count();

// Runs body(begin, end) over a static partition of [0, count) into at most thread_count() chunks.
// Chunk boundaries depend only on count and the thread count, never on timing.
void parallel_chunks(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

// Runs body(i) for every i in [0, count), one task per index.
void parallel_for_each(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace spherenet
