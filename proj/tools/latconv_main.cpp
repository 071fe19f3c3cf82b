#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "latconv/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw latconv::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int emit(const latconv::RunResult& res, const std::string& report_path) {
  if (report_path.empty()) {
    std::cout << res.json;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << report_path << "'\n";
      return 2;
    }
    out << res.json;
  }
  return res.clean_exit() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checker for deferred statistical order convergence"};
  app.require_subcommand(1);

  std::string spec_path, report_path;
  latconv::RunOptions opts;
  long long trials = 100;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--prefix-n", opts.prefix_n, "exact prefix length for certificate checks");
    sub->add_option("--n-max", opts.n_max, "largest window index for density estimation");
    sub->add_option("--budget", opts.budget, "work budget per task, in evaluation units");
    sub->add_option("--seed", opts.seed, "seed echoed into the report");
    sub->add_option("--report", report_path, "write the JSON report to this file");
    sub->add_option("--jobs", opts.jobs, "run tasks concurrently (never changes the bytes)");
    sub->add_flag("--timings", opts.timings, "add wall-clock fields (breaks byte-identity)");
  };
  auto add_spec_arg = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "analysis spec file")
        ->required()
        ->check(CLI::ExistingFile);
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a spec file");
  add_spec_arg(validate);

  const char* kFiltered[] = {"density", "cesaro", "member", "falsify"};
  const char* kFilteredHelp[] = {"run only the spec's density tasks",
                                 "run only the spec's cesaro tasks",
                                 "run only the spec's member tasks",
                                 "run only the spec's falsify tasks"};
  for (int i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(kFiltered[i], kFilteredHelp[i]);
    add_spec_arg(sub);
    add_run_flags(sub);
  }
  CLI::App* check = app.add_subcommand("check", "run every task in the spec");
  add_spec_arg(check);
  add_run_flags(check);

  CLI::App* theorems = app.add_subcommand("theorems", "run the built-in theorem corpus");
  theorems->add_option("--trials", trials, "instances per theorem family");
  add_run_flags(theorems);

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    if (name == "theorems")
      return emit(latconv::theorem_report(opts.seed, static_cast<int>(trials), opts),
                  report_path);

    latconv::AnalysisSpec spec = latconv::parse_spec(read_file(spec_path));
    if (name == "validate") {
      std::cout << "ok: dim " << spec.dim << ", pair " << spec.pair.str() << ", "
                << spec.sets.size() << " sets, " << spec.sequences.size() << " sequences, "
                << spec.certs.size() << " certificates, " << spec.tasks.size() << " tasks\n";
      return 0;
    }
    if (name != "check") {
      std::erase_if(spec.tasks, [&](const latconv::SpecTask& t) { return t.op != name; });
      if (spec.tasks.empty()) {
        std::cerr << "error: the spec has no '" << name << "' tasks\n";
        return 2;
      }
    }
    return emit(latconv::run(spec, opts), report_path);
  } catch (const latconv::SpecParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
