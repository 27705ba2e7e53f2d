#include <cstdio>

#include "cli_common.hpp"
#include "spectra/parallel.hpp"

namespace spectra::cli {

int cmd_verify(const VerifyOptions& opt) {
  if (opt.ns.empty()) throw std::invalid_argument("verify: --n list must be nonempty");
  for (int n : opt.ns)
    if (n < 1) throw std::invalid_argument("verify: n must be >= 1");
  if (opt.seeds.empty()) throw std::invalid_argument("verify: --seeds list must be nonempty");
  if (!(opt.tol_scale > 0.0)) throw std::invalid_argument("verify: --tol-scale must be > 0");

  io::RunManifest manifest;
  manifest.command = "verify";
  manifest.started = io::iso8601_utc_now();
  manifest.seed = opt.seeds.front();
  manifest.parameters["n"] = join_ints(opt.ns);
  manifest.parameters["seeds"] = join_seeds(opt.seeds);
  manifest.parameters["tol_scale"] = io::format_double(opt.tol_scale);

  struct Job {
    int n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : opt.ns)
    for (std::uint64_t seed : opt.seeds) jobs.push_back({n, seed});

  std::vector<std::vector<IdentityReport>> results(jobs.size());
  parallel_for(jobs.size(), opt.threads, [&](std::size_t k) {
    results[k] = run_identity_suite(jobs[k].n, jobs[k].seed, opt.tol_scale);
  });

  nlohmann::json payload = nlohmann::json::array();
  bool all_passed = true;
  for (const auto& suite : results)
    for (const auto& report : suite) {
      all_passed = all_passed && report.passed;
      payload.push_back(report_to_json(report));
    }

  emit_payload(opt.out, payload.dump(2) + "\n", manifest);
  std::fprintf(stderr, "verify: %zu reports, %s\n", payload.size(),
               all_passed ? "all passed" : "FAILURES present");
  return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace spectra::cli
