#include <cstdio>

#include "cli_common.hpp"
#include "spectra/parallel.hpp"

namespace spectra::cli {

int cmd_hw(const HwOptions& opt) {
  if (opt.ns.empty()) throw std::invalid_argument("hw: --n list must be nonempty");
  for (int n : opt.ns)
    if (n < 1) throw std::invalid_argument("hw: n must be >= 1");
  if (opt.seeds.empty()) throw std::invalid_argument("hw: --seeds list must be nonempty");

  io::RunManifest manifest;
  manifest.command = "hw";
  manifest.started = io::iso8601_utc_now();
  manifest.seed = opt.seeds.front();
  manifest.parameters["n"] = join_ints(opt.ns);
  manifest.parameters["seeds"] = join_seeds(opt.seeds);

  struct Job {
    int n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : opt.ns)
    for (std::uint64_t seed : opt.seeds) jobs.push_back({n, seed});

  std::vector<IdentityReport> reports(jobs.size());
  parallel_for(jobs.size(), opt.threads, [&](std::size_t k) {
    reports[k] = check_hoffman_wielandt(sample_gaussian(jobs[k].n, jobs[k].seed));
  });

  nlohmann::json payload = nlohmann::json::array();
  bool all_passed = true;
  for (const auto& report : reports) {
    all_passed = all_passed && report.passed;
    payload.push_back(report_to_json(report));
  }
  emit_payload(opt.out, payload.dump(2) + "\n", manifest);
  std::fprintf(stderr, "hw: %zu checks, %s\n", reports.size(),
               all_passed ? "all passed" : "FAILURES present");
  return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace spectra::cli
