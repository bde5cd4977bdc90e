#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "latmon/latmon.hpp"
#include "latmon/report.hpp"

namespace fs = std::filesystem;
using namespace latmon;
using report::json;

namespace {

struct Options {
  std::string monad = "downset";
  bool json = false;
  bool timings = false;
  std::size_t budget = Budget{}.elements;
  std::uint64_t seed = Budget{}.seed;
  std::size_t iterate = 1;
  std::size_t max_size = 6;
  std::string emit;
  std::string relation = "order";
  std::string file;
};

MonadInstance monad_of(const Options& o) {
  return o.monad == "ideal" ? MonadInstance::ideal() : MonadInstance::downset();
}

Budget budget_of(const Options& o) {
  Budget b;
  b.elements = o.budget;
  b.seed = o.seed;
  return b;
}

int print(const report::Result& r, const Options& o, double seconds) {
  json body = r.body;
  if (o.timings) body["timings"] = {{"seconds", seconds}};
  if (o.json) {
    std::cout << body.dump(2) << '\n';
  } else if (body.contains("dot") && !o.timings) {
    std::cout << body["dot"].get<std::string>();
  } else {
    report::render_text(std::cout, body);
  }
  return r.exit;
}

int fail(const Options& o, int code, const std::string& kind, const std::string& message) {
  if (o.json) {
    std::cout << json{{"schema", report::kSchema}, {"error", kind}, {"message", message}, {"ok", false}}.dump(2) << '\n';
  } else {
    std::cerr << "latmon: " << kind << ": " << message << '\n';
  }
  return code;
}

int emit_corpus(const Options& o) {
  fs::create_directories(o.emit);
  for (const auto& e : standard_corpus(o.max_size)) {
    std::ofstream out(fs::path(o.emit) / (e.name + ".lat"));
    out << emit_lat(e.name, strongest_kind(e.poset), e.poset);
    if (!out) throw std::runtime_error("cannot write " + (fs::path(o.emit) / (e.name + ".lat")).string());
  }
  return 0;
}

int run(const std::string& command, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  const MonadInstance t = monad_of(o);
  const Budget b = budget_of(o);

  if (command == "corpus") {
    if (o.max_size < 1 || o.max_size > 7) return fail(o, report::kUsage, "usage", "--max-size must be in 1..7");
    if (!o.emit.empty()) emit_corpus(o);
    return print(report::corpus(o.max_size), o, elapsed());
  }

  const Carrier c = read_carrier(o.file);
  if (command == "validate") return print(report::validate(c), o, elapsed());
  if (command == "dot") {
    if (o.relation == "totally-below" && !c.lattice)
      return fail(o, report::kUsage, "validation", "totally-below needs a lattice");
    return print(report::dot(c, o.relation), o, elapsed());
  }
  if (auto why = report::outside_domain(t, c)) return fail(o, report::kUsage, "validation", *why);

  static const std::map<std::string, std::function<report::Result(MonadInstance, const Carrier&, const Budget&)>> commands{
      {"laws", report::laws},       {"lax", report::lax},     {"tower", report::tower},
      {"fakir", report::fakir},     {"stone", report::stone}, {"projective", report::projective},
  };
  if (command == "apply") return print(report::apply(t, c, o.iterate, b), o, elapsed());
  return print(commands.at(command)(t, c, b), o, elapsed());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite lattices, the downset and ideal monads, and their algebra towers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--monad", o.monad, "downset or ideal")->check(CLI::IsMember({"downset", "ideal"}));
  app.add_flag("--json", o.json, "machine-readable report");
  app.add_flag("--timings", o.timings, "add wall-clock timings to the report");
  app.add_option("--budget", o.budget, "largest subset level materialized or enumerated")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for sampled associativity checks");

  auto with_file = [&](CLI::App* sub) { sub->add_option("file", o.file, ".lat file")->required(); return sub; };
  with_file(app.add_subcommand("validate", "parse and validate a .lat file"));
  with_file(app.add_subcommand("apply", "apply the monad, printing |T^k X| and tables"))
      ->add_option("--iterate", o.iterate, "number of applications")
      ->check(CLI::Range(1, 4));
  with_file(app.add_subcommand("laws", "check the monad laws"));
  with_file(app.add_subcommand("lax", "check lax idempotency and the adjoint chain"));
  with_file(app.add_subcommand("tower", "algebra, coalgebra, T1-algebra and the equivalence pipeline"));
  with_file(app.add_subcommand("fakir", "the first Fakir approximation"));
  with_file(app.add_subcommand("stone", "generator extraction round-trip"));
  with_file(app.add_subcommand("projective", "coalgebra, retraction and lifting checks"));
  auto* corpus = app.add_subcommand("corpus", "list the standard corpus, optionally writing .lat files");
  corpus->add_option("--max-size", o.max_size, "largest enumerated carrier");
  corpus->add_option("--emit", o.emit, "directory for .lat files");
  with_file(app.add_subcommand("dot", "DOT text for the order or the totally-below relation"))
      ->add_option("--relation", o.relation, "order or totally-below")
      ->check(CLI::IsMember({"order", "totally-below"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : report::kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const ParseError& e) {
    return fail(o, report::kUsage, "parse", e.what());
  } catch (const KindMismatch& e) {
    return fail(o, report::kUsage, "validation", e.what());
  } catch (const BudgetExceeded& e) {
    return fail(o, report::kUsage, "budget", e.what());
  } catch (const std::exception& e) {
    return fail(o, report::kUsage, "error", e.what());
  }
}
