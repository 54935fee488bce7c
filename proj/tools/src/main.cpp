#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "irstool/errors.hpp"
#include "irstool/experiment.hpp"
#include "irstool/validate.hpp"

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("IRS_SIM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  unsigned value = 0;
  const std::string text(env);
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw irstool::SpecError("IRS_SIM_THREADS must be a nonnegative integer");
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-operator IRS downlink simulator: spectral-efficiency sweeps, "
      "SNR-offset CCDFs, and an analytic cross-validation suite."};

  std::string spec_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  unsigned threads = 0;
  bool debug_phase_identity = false;

  app.add_option("--spec", spec_path,
                 "experiment spec file (omit for the default validate spec)");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "override the spec's RNG seed");
  app.add_option("--out", out_dir, "override the spec's output directory");
  CLI::Option* threads_opt = app.add_option(
      "--threads", threads,
      "worker threads (0 = hardware); never changes numeric results");
  app.add_flag("--debug-phase-identity", debug_phase_identity,
               "run the random-vs-foreign-optimal phase distribution check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (threads_opt->count() == 0) threads = threads_from_env();

    irstool::ExperimentSpec spec = spec_path.empty()
                                       ? irstool::default_spec()
                                       : irstool::load_spec(spec_path);
    if (seed_opt->count() > 0) spec.sim.seed = seed;
    if (!out_dir.empty()) spec.output_dir = out_dir;
    spec.debug_phase_identity |= debug_phase_identity;

    return irstool::run_experiment(spec, threads);
  } catch (const irstool::SpecError& e) {
    std::fprintf(stderr, "spec error: %s\n", e.what());
    return 2;
  } catch (const irstool::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "spec error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
