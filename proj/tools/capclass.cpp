// capclass: classify caps of PG(d,2) and check the results.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "capclass/brute_force.hpp"
#include "capclass/catalog.hpp"
#include "capclass/classifier.hpp"

using namespace capclass;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag, then CAPCLASS_THREADS, then hardware parallelism.
int resolve_threads(int flag) {
  if (flag > 0)
    return flag;
  if (const char *env = std::getenv("CAPCLASS_THREADS")) {
    char *end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 4096)
      throw UsageError(std::string("CAPCLASS_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Catalog load_catalog(const std::string &path) {
  try {
    return parse_catalog(read_file(path));
  } catch (const CapError &e) {
    throw UsageError(path + ": " + e.what());
  }
}

int run_classify(int d, const std::string &out_path, int threads_flag, bool prune, int max_size) {
  ClassifyOptions options;
  options.threads = resolve_threads(threads_flag);
  options.ordering_prune = prune;
  options.max_size = max_size;
  std::cerr << "classifying PG(" << d << ",2) with " << options.threads << " thread(s)\n";
  auto levels = classify(d, options);
  Catalog catalog = make_catalog(d, levels);
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
      throw UsageError("cannot write " + out_path);
    out << serialize(catalog);
    if (!out.flush())
      throw UsageError("write to " + out_path + " failed");
  }
  std::cout << format_table1(table1(catalog));
  std::cout << "classes " << catalog.entries.size() << '\n';
  return kOk;
}

int run_oracle(int d) {
  auto oracle_classes = oracle::classify(d);
  auto engine = classify(d);
  std::cout << "size complete incomplete (oracle)\n";
  std::map<int, std::pair<int, int>> counts;
  for (const auto &c : oracle_classes)
    ++(c.complete ? counts[c.size].first : counts[c.size].second);
  for (const auto &[size, ci] : counts)
    std::cout << size << ' ' << ci.first << ' ' << ci.second << '\n';
  auto diffs = oracle::compare(oracle_classes, engine);
  for (const std::string &diff : diffs)
    std::cerr << diff << '\n';
  std::cout << (diffs.empty() ? "identical" : "DIFFERENT") << '\n';
  return diffs.empty() ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Classification of caps in PG(d,2)"};
  app.require_subcommand(1);

  int dim = 5;
  int threads = 0;
  bool prune = false;
  int max_size = 0;
  std::string out_path, points, catalog_path, fixtures_path;

  auto *classify_cmd = app.add_subcommand("classify", "Classify all spanning caps and write a catalog");
  classify_cmd->add_option("--dim", dim, "Projective dimension d")->required();
  classify_cmd->add_option("--out", out_path, "Catalog output file")->required();
  classify_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  classify_cmd->add_flag("--ordering-prune", prune, "Skip extensions an earlier class already produces");
  classify_cmd->add_option("--max-size", max_size, "Stop after this cap size")->check(CLI::NonNegativeNumber);

  auto add_point_command = [&](const char *name, const char *help) {
    auto *cmd = app.add_subcommand(name, help);
    cmd->add_option("--dim", dim, "Projective dimension d")->required();
    cmd->add_option("--points", points, "Comma-separated increasing point indices")->required();
    return cmd;
  };
  auto *canon_cmd = add_point_command("canon", "Print the canonical key and stabilizer order");
  auto *stab_cmd = add_point_command("stab", "Print the stabilizer order");
  auto *cand_cmd = add_point_command("candidates", "Print the points extending the cap");

  auto *verify_cmd = app.add_subcommand("verify", "Check fixtures against a catalog");
  verify_cmd->add_option("--catalog", catalog_path)->required();
  verify_cmd->add_option("--fixtures", fixtures_path)->required();

  auto *table_cmd = app.add_subcommand("table1", "Print class counts per size");
  table_cmd->add_option("--catalog", catalog_path)->required();

  auto *oracle_cmd = app.add_subcommand("oracle", "Compare the engine with brute force");
  oracle_cmd->add_option("--dim", dim, "Projective dimension d (at most 3)")->default_val(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (classify_cmd->parsed()) {
      SpaceParams space(dim);
      return run_classify(dim, out_path, threads, prune, max_size);
    }
    if (canon_cmd->parsed() || stab_cmd->parsed() || cand_cmd->parsed()) {
      SpaceParams space(dim);
      CapSet s = parse_points(points);
      require_in_space(space, s);
      if (cand_cmd->parsed()) {
        std::cout << format_points(candidate_set(space, s)) << '\n';
      } else if (stab_cmd->parsed()) {
        std::cout << stabilizer_order(space, s) << '\n';
      } else {
        CanonicalRecord rec = canonical(space, s);
        std::cout << format_points(rec.key) << '\n' << rec.stabilizer_order << '\n';
      }
      return kOk;
    }
    if (verify_cmd->parsed()) {
      Catalog catalog = load_catalog(catalog_path);
      std::vector<Fixture> fixtures;
      try {
        fixtures = parse_fixtures(read_file(fixtures_path));
      } catch (const CapError &e) {
        throw UsageError(fixtures_path + ": " + e.what());
      }
      FixtureReport report = verify_fixtures(catalog, fixtures);
      std::cout << format_report(report);
      return report.ok() ? kOk : kVerifyFailed;
    }
    if (table_cmd->parsed()) {
      std::cout << format_table1(table1(load_catalog(catalog_path)));
      return kOk;
    }
    if (oracle_cmd->parsed())
      return run_oracle(dim);
  } catch (const CapError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
