#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cantorgeo/cli.hpp"

using cantorgeo::Command;

namespace {

struct Flags {
  bool depth = false, horizon = false, blocks = false, index = false, from = false, mode = false,
       deltas = false, threshold = false, sides = false, spec = true;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Cantor sets: intervals, geodesic length bounds and condition checks"};
  app.require_subcommand(1);

  Command cmd;
  std::string format = "json";
  int depth = 0, precision = 0;
  std::uint64_t horizon = 0, blocks = 0, index = 0, from = 0;
  double threshold = 0;

  const std::map<std::string, Flags> table = {
      {"intervals", {.depth = true, .mode = true}},
      {"gaps", {.depth = true}},
      {"bounds", {.depth = true, .index = true}},
      {"classify", {.horizon = true, .deltas = true}},
      {"check-i", {.horizon = true, .threshold = true}},
      {"check-ii", {.blocks = true, .threshold = true}},
      {"sums", {.blocks = true}},
      {"witness", {.horizon = true, .from = true}},
      {"pentagon", {.sides = true, .spec = false}},
      {"report", {.horizon = true, .blocks = true, .threshold = true}},
  };

  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  for (const auto& verb : cantorgeo::verbs()) {
    const Flags& f = table.at(verb);
    CLI::App* s = app.add_subcommand(verb);
    subs[verb] = s;
    auto& o = opts[verb];
    if (f.spec) s->add_option("--spec", cmd.spec_path, "spec file (key = value)")->required();
    if (f.depth) o["depth"] = s->add_option("--depth", depth, "construction depth k")->check(CLI::NonNegativeNumber);
    if (f.horizon) o["horizon"] = s->add_option("--horizon", horizon, "finite horizon");
    if (f.blocks) o["blocks"] = s->add_option("--blocks", blocks, "number of A-blocks");
    if (f.index) o["index"] = s->add_option("--index,-i", index, "single interval index i");
    if (f.from) o["from"] = s->add_option("--from", from, "first index");
    if (f.mode) s->add_option("--mode", cmd.mode, "auto | exact | log")->check(CLI::IsMember({"auto", "exact", "log"}));
    if (f.deltas) s->add_option("--delta", cmd.deltas, "delta grid values")->delimiter(',');
    if (f.threshold) o["threshold"] = s->add_option("--threshold", threshold, "divergence threshold");
    if (f.sides) {
      s->add_option("--a", cmd.a, "side a")->required();
      auto* b = s->add_option("--b", cmd.b, "side b (solve for d)");
      auto* d = s->add_option("--d", cmd.d, "side d (solve for b)");
      b->excludes(d);
    }
    s->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    o["precision"] = s->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 30));
    s->add_option("--output,-o", cmd.output, "output path, '-' for stdout");
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto& [verb, s] : subs) {
    if (!s->parsed()) continue;
    cmd.verb = verb;
    auto& o = opts[verb];
    auto given = [&](const char* name) { return o.count(name) && o[name]->count() > 0; };
    if (given("depth")) cmd.depth = depth;
    if (given("horizon")) cmd.horizon = horizon;
    if (given("blocks")) cmd.blocks = blocks;
    if (given("index")) cmd.index = index;
    if (given("from")) cmd.from = from;
    if (given("threshold")) cmd.threshold = threshold;
    if (given("precision")) cmd.precision = precision;
  }
  cmd.format = cantorgeo::parse_format(format);
  return cantorgeo::run(cmd, std::cout, std::cerr);
}
