#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "spectra/io.hpp"

namespace cli = spectra::cli;

int main(int argc, char** argv) {
  CLI::App app{"spectra: random symmetric Toeplitz matrices, their circulant embedding,\n"
               "Stieltjes transforms, spectral-averaging bounds and Monte Carlo density\n"
               "estimates"};
  app.set_version_flag("--version", spectra::io::kToolVersion);
  app.require_subcommand(1);

  cli::VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "run the exact-identity suite");
  verify->add_option("--n", verify_opt.ns, "matrix sizes")->delimiter(',')->required();
  verify->add_option("--seeds", verify_opt.seeds, "seeds")->delimiter(',');
  verify->add_option("--tol-scale", verify_opt.tol_scale, "tolerance multiplier");
  verify->add_option("--out", verify_opt.out, "JSON output path");
  verify->add_option("--threads", verify_opt.threads, "worker threads (0 = auto)");

  cli::StieltjesOptions st_opt;
  auto* st = app.add_subcommand("stieltjes", "Monte Carlo Stieltjes transform with key bound");
  st->add_option("--n", st_opt.n, "matrix size");
  st->add_option("--samples", st_opt.samples, "Monte Carlo samples");
  st->add_option("--seed", st_opt.seed, "master seed");
  st->add_option("--egrid", st_opt.egrid, "energy grid lo:hi:step");
  st->add_option("--imz", st_opt.imz, "imaginary offsets")->delimiter(',');
  st->add_option("--out", st_opt.out, "CSV output path");
  st->add_option("--threads", st_opt.threads, "worker threads (0 = auto)");
  st->add_flag("--verify-identity", st_opt.verify_identity,
               "also run the 2n-dimensional resolvent side and compare per sample");

  cli::DensityOptions de_opt;
  auto* de = app.add_subcommand("density", "kernel density estimate of the limit law");
  de->add_option("--n", de_opt.n, "matrix size");
  de->add_option("--samples", de_opt.samples, "Monte Carlo samples");
  de->add_option("--seed", de_opt.seed, "master seed");
  de->add_option("--grid-min", de_opt.grid_min, "grid lower edge");
  de->add_option("--grid-max", de_opt.grid_max, "grid upper edge");
  de->add_option("--grid-points", de_opt.grid_points, "grid point count");
  de->add_option("--bandwidth", de_opt.bandwidth, "KDE bandwidth (default: Silverman)");
  de->add_option("--ensemble", de_opt.ensemble, "toeplitz or hankel");
  de->add_option("--bootstrap", de_opt.bootstrap, "bootstrap resamples (>= 50)");
  de->add_option("--out", de_opt.out, "CSV output path");
  de->add_option("--threads", de_opt.threads, "worker threads (0 = auto)");

  cli::WegnerOptions we_opt;
  auto* we = app.add_subcommand("wegner", "spectral-averaging bound suite");
  we->add_flag("--self-test", we_opt.self_test, "run the scalar analytic family instead");
  we->add_option("--n", we_opt.n, "matrix size (family mode)");
  we->add_option("--seed", we_opt.seed, "seed for the frozen couplings");
  we->add_option("--j", we_opt.j, "distinguished coupling index in [0, n]");
  we->add_option("--variant", we_opt.variant, "B variant: low or high");
  we->add_option("--E", we_opt.energies, "energies")->delimiter(',');
  we->add_option("--delta", we_opt.deltas, "imaginary offsets")->delimiter(',');
  we->add_option("--eps-ladder", we_opt.eps_ladder, "decreasing ladder in (0,1]")->delimiter(',');
  we->add_option("--quad-points", we_opt.quad_points, "minimum quadrature nodes");
  we->add_option("--lambda-points", we_opt.lambda_points, "pointwise-bound grid size");
  we->add_option("--out", we_opt.out, "JSON output path");
  we->add_option("--threads", we_opt.threads, "worker threads (0 = auto)");

  cli::HwOptions hw_opt;
  auto* hw = app.add_subcommand("hw", "Hoffman-Wielandt diagonal-modification bound");
  hw->add_option("--n", hw_opt.ns, "matrix sizes")->delimiter(',')->required();
  hw->add_option("--seeds", hw_opt.seeds, "seeds")->delimiter(',');
  hw->add_option("--out", hw_opt.out, "JSON output path");
  hw->add_option("--threads", hw_opt.threads, "worker threads (0 = auto)");

  cli::MomentsOptions mo_opt;
  auto* mo = app.add_subcommand("moments", "moment diagnostics against exact values");
  mo->add_option("--n", mo_opt.n, "matrix size");
  mo->add_option("--samples", mo_opt.samples, "Monte Carlo samples");
  mo->add_option("--seed", mo_opt.seed, "master seed");
  mo->add_option("--max-order", mo_opt.max_order, "highest moment order");
  mo->add_option("--out", mo_opt.out, "CSV output path");
  mo->add_option("--threads", mo_opt.threads, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (verify->parsed()) return cli::cmd_verify(verify_opt);
    if (st->parsed()) return cli::cmd_stieltjes(st_opt);
    if (de->parsed()) return cli::cmd_density(de_opt);
    if (we->parsed()) return cli::cmd_wegner(we_opt);
    if (hw->parsed()) return cli::cmd_hw(hw_opt);
    if (mo->parsed()) return cli::cmd_moments(mo_opt);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitCheckFailed;
  }
  return cli::kExitUsage;
}
