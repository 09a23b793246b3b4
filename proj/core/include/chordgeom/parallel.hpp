#pragma once

#include <functional>

namespace chordgeom {

void set_thread_count(int threads);
int thread_count();

// Runs fn(i) for i in [0, count). Callers write into per-index slots and reduce
// in index order, so results do not depend on the thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace chordgeom
