// Command-line front end. Links only against the shared C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wetlab.h"

int main(int argc, char** argv) {
  CLI::App app{"2-D wetting laboratory: effective contact angles, groove "
               "certificates and droplet energy minimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 0;

  std::vector<CLI::App*> subs;
  for (const char* name : {"analyze", "certify", "minimize", "converge"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "config file (key = value)")
        ->required();
    sub->add_option("--set", overrides, "override config entries, key=value");
    sub->add_option("--threads", threads,
                    "worker threads (default: hardware parallelism)");
    subs.push_back(sub);
  }
  subs[0]->description("closed-form wetting report for the configured profile");
  subs[1]->description("unreachability certificate for the groove domain");
  subs[2]->description("volume-constrained droplet energy minimization");
  subs[3]->description("epsilon sweep comparing rough and effective droplets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::vector<const char*> ov;
  for (const auto& s : overrides) ov.push_back(s.c_str());

  wl_status st = wl_run(app.get_subcommands().front()->get_name().c_str(),
                        config_path.c_str(), ov.data(), ov.size(), threads);
  if (st != WL_OK) std::fprintf(stderr, "%s\n", wl_last_error());
  return static_cast<int>(st);
}
