#include "oreext/parallel.hpp"

namespace oreext {

namespace {
std::atomic<unsigned> g_jobs{1};
}

void set_jobs(unsigned jobs) { g_jobs.store(jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs); }

unsigned jobs() { return g_jobs.load(); }

}  // namespace oreext
