#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ustlab/experiments.hpp"
#include "ustlab/generators.hpp"
#include "ustlab/network.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

struct CommonOpts {
  std::string config;
  std::string out;
  long long seed = -1;
  int threads = 0;
  int replicas = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "JSON config file mirroring the experiment spec");
  cmd->add_option("--out", o.out, "CSV output path (default from config, else stdout)");
  cmd->add_option("--seed", o.seed, "override the master seed");
  cmd->add_option("--threads", o.threads, "worker threads for replicas");
  cmd->add_option("--replicas", o.replicas, "override replicas per size");
}

int run_named(const std::string& name, const CommonOpts& o) {
  ustlab::ExperimentSpec spec;
  if (!o.config.empty()) spec = ustlab::ExperimentSpec::from_json(read_file(o.config));
  spec.experiment = name;
  if (o.seed >= 0) spec.seed = static_cast<std::uint64_t>(o.seed);
  if (o.threads > 0) spec.threads = o.threads;
  if (o.replicas > 0) spec.replicas = o.replicas;
  if (!o.out.empty()) spec.out = o.out;
  if (spec.sizes.empty()) spec.sizes = {256};

  const ustlab::ExperimentResult res = ustlab::run_experiment(spec);
  const std::string csv = res.to_csv();
  if (spec.out.empty() || spec.out == "-")
    std::cout << csv;
  else
    write_file(spec.out, csv);
  for (const std::string& v : res.violations) std::cerr << "VIOLATION: " << v << "\n";
  return res.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ustlab: uniform spanning tree samplers and walk estimators"};
  app.require_subcommand(1);

  CommonOpts diameter_o, path_o, sunny_o, twowalk_o, height_o;
  add_common(app.add_subcommand("diameter", "UST diameter scaling across graph sizes"), diameter_o);
  add_common(app.add_subcommand("path-law", "length and capacity of the UST path between stationary points"),
             path_o);
  add_common(app.add_subcommand("sunny", "sunny-network coupling sweep over beta"), sunny_o);
  add_common(app.add_subcommand("two-walk", "two-walk intersection, escape, capacity and closeness claims"),
             twowalk_o);
  add_common(app.add_subcommand("height-ball", "height-of-past tails and tree-ball growth"), height_o);

  auto* audit = app.add_subcommand("audit", "balance/mixing/escaping assumption audit of one graph");
  std::string audit_graph, audit_family;
  int audit_n = 0;
  double audit_alpha = 0.1, audit_theta = 20.0, audit_dmax = 8.0;
  long long audit_seed = 1;
  audit->add_option("--graph", audit_graph, "edge-list file: header 'n m', lines 'u v w'");
  audit->add_option("--family", audit_family, "generate the graph instead of reading one");
  audit->add_option("--n", audit_n, "size for --family");
  audit->add_option("--alpha", audit_alpha, "mixing exponent");
  audit->add_option("--theta", audit_theta, "escaping threshold");
  audit->add_option("--d-max", audit_dmax, "balance threshold");
  audit->add_option("--seed", audit_seed, "seed for generated families");

  CLI11_PARSE(app, argc, argv);

  try {
    if (audit->parsed()) {
      ustlab::Network g = audit_graph.empty()
                              ? ustlab::make_family(audit_family, audit_n, static_cast<std::uint64_t>(audit_seed))
                              : ustlab::Network::from_edge_list(read_file(audit_graph));
      const ustlab::AuditReport rep = ustlab::run_assumption_audit(g, audit_alpha, audit_theta, audit_dmax);
      std::cout << rep.to_text();
      return (rep.balance_pass && rep.mixing_pass && rep.escaping_pass) ? 0 : 2;
    }
    if (app.get_subcommand("diameter")->parsed()) return run_named("diameter", diameter_o);
    if (app.get_subcommand("path-law")->parsed()) return run_named("path-law", path_o);
    if (app.get_subcommand("sunny")->parsed()) return run_named("sunny", sunny_o);
    if (app.get_subcommand("two-walk")->parsed()) return run_named("two-walk", twowalk_o);
    if (app.get_subcommand("height-ball")->parsed()) return run_named("height-ball", height_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
