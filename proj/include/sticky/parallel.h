#ifndef STICKY_PARALLEL_H_
#define STICKY_PARALLEL_H_

#include <functional>

namespace sticky {

// Number of workers for a `jobs` setting: values <= 0 mean all hardware
// threads.
int ResolveJobs(int jobs);

// Runs body(i) for i in [0, count) on up to `jobs` threads.  The first
// exception thrown by any body is rethrown after all workers stop.
void ParallelFor(int count, int jobs, const std::function<void(int)>& body);

}  // namespace sticky

#endif  // STICKY_PARALLEL_H_
