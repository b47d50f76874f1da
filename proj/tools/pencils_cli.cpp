// Command-line frontend: parse states or pencils from JSON files, run the
// library operations, print structured JSON results, emit DOT graphs.
//
// Exit codes: 0/1/2/3 encode verdicts per subcommand; 64 usage error;
// 65 malformed input file; 70 spectrum not Gaussian-rational.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pencils/io.hpp"

namespace {

using namespace pencils;
using pencils::io::Json;

constexpr int kExitUsage = 64;
constexpr int kExitBadInput = 65;
constexpr int kExitIrrational = 70;

void printJson(const Json& j) { std::cout << j.dump(2) << "\n"; }

int runInvariants(const std::string& file) {
  State s = io::stateFromFile(file);
  Json out;
  out["dims"] = {2, s.m(), s.n()};
  out["invariants"] = io::invariantsToJson(kroneckerInvariants(stateToPencil(s)));
  out["localRanks"] = io::localRanksToJson(localRanks(s));
  out["tensorRank"] = tensorRank(s);
  printJson(out);
  return 0;
}

int runCanonical(const std::string& file) {
  State s = io::stateFromFile(file);
  Pencil p = stateToPencil(s);
  Json out;
  KroneckerInvariants inv = kroneckerInvariants(p);
  if (!inv.infiniteDivisorDegrees.empty()) {
    LFT t = regularizingLft(inv);
    out["regularizingLft"] = io::lftToJson(t);
    p = applyLftToPencil(p, t);
  }
  CanonicalDecomposition d = reduceToCanonical(p);
  out["B"] = io::matrixToJson(d.B);
  out["C"] = io::matrixToJson(d.C);
  out["canonical"] = io::pencilToJson(d.K);
  out["invariants"] = io::invariantsToJson(d.inv);
  printJson(out);
  return 0;
}

int runEquiv(const std::string& fileA, const std::string& fileB, bool verify) {
  State a = io::stateFromFile(fileA), b = io::stateFromFile(fileB);
  EquivVerdict v = sloccEquivalent(a, b);
  Json out;
  if (!v.equivalent) {
    out["verdict"] = "NotEquivalent";
    out["reason"] = v.reason;
    out["differingInvariant"] =
        firstDifferingInvariant(kroneckerInvariants(stateToPencil(a)),
                                kroneckerInvariants(stateToPencil(b)));
    printJson(out);
    return 1;
  }
  out["verdict"] = "Equivalent";
  out["witness"] = io::witnessToJson(*v.witness);
  if (verify)
    out["verified"] = statesEqualUpToScale(applySlocc(a, *v.witness), b);
  printJson(out);
  return 0;
}

int runClassify(const std::string& file) {
  printJson(io::descriptorToJson(classify(io::stateFromFile(file))));
  return 0;
}

int runEnumerate(const std::vector<size_t>& dims, bool fullRankOnly) {
  Catalogue cat = enumerateClasses(dims[1], dims[2]);
  if (fullRankOnly && cat.finite) {
    std::erase_if(cat.classes, [&](const ClassDescriptor& d) {
      return d.ranks.rA != 2 || d.ranks.rB != dims[1] || d.ranks.rC != dims[2];
    });
  }
  printJson(io::catalogueToJson(cat));
  return cat.finite ? 0 : 2;
}

int runConvert(const std::string& fileA, const std::string& fileB,
               size_t budget, unsigned seed, bool verify) {
  ClassDescriptor src = classify(io::stateFromFile(fileA));
  ClassDescriptor dst = classify(io::stateFromFile(fileB));
  Json out;
  out["src"] = src.label;
  out["dst"] = dst.label;
  if (src == dst) {
    out["verdict"] = "Equivalent";
    printJson(out);
    return 0;
  }
  ConvertVerdict v = convertibility(src, dst, budget, seed);
  Json vj = io::convertVerdictToJson(v);
  for (auto& [k, val] : vj.items()) out[k] = val;
  if (verify && v.tag == ConvertVerdict::Tag::Convertible) {
    State produced = applySlocc(representativeState(src),
                                {v.aliceOp, v.bobOp, v.charlieOp});
    out["verified"] = classify(produced) == dst;
  }
  printJson(out);
  switch (v.tag) {
    case ConvertVerdict::Tag::Convertible: return 0;
    case ConvertVerdict::Tag::Obstructed: return 1;
    case ConvertVerdict::Tag::Undecided: return 3;
  }
  return 3;
}

int runHierarchy(const std::vector<size_t>& dims, const std::string& dotPath,
                 size_t budget, unsigned seed) {
  Hierarchy h = hierarchy(dims[1], dims[2], budget, seed);
  if (!h.catalogue.finite) {
    printJson(io::catalogueToJson(h.catalogue));
    return 2;
  }
  if (!dotPath.empty()) {
    std::ofstream dot(dotPath);
    if (!dot) {
      std::cerr << "cannot write " << dotPath << "\n";
      return kExitUsage;
    }
    dot << io::hierarchyToDot(h);
  }
  Json out;
  out["classes"] = h.catalogue.classes.size();
  out["edges"] = h.edges.size();
  Json edges = Json::array();
  for (const auto& e : h.edges)
    edges.push_back({{"src", h.catalogue.classes[e.src].label},
                     {"dst", h.catalogue.classes[e.dst].label}});
  out["edgeList"] = std::move(edges);
  Json undecided = Json::array();
  for (const auto& [i, j] : h.undecided)
    undecided.push_back({{"src", h.catalogue.classes[i].label},
                         {"dst", h.catalogue.classes[j].label}});
  out["undecidedPairs"] = std::move(undecided);
  printJson(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kronecker invariants, canonical forms, and SLOCC "
               "classification of 2 x m x n states"};
  app.require_subcommand(1);

  std::string fileA, fileB, dotPath;
  std::vector<size_t> dims;
  size_t budget = 10000;
  unsigned seed = 0;
  bool fullRankOnly = false, verify = false;

  auto* inv = app.add_subcommand("invariants", "Kronecker invariants, local ranks, tensor rank");
  inv->add_option("file", fileA)->required();

  auto* canon = app.add_subcommand("canonical", "canonical pencil with transformation witness");
  canon->add_option("file", fileA)->required();

  auto* equiv = app.add_subcommand("equiv", "decide SLOCC equivalence of two states");
  equiv->add_option("fileA", fileA)->required();
  equiv->add_option("fileB", fileB)->required();
  equiv->add_flag("--verify", verify, "re-apply the witness and report the check");

  auto* cls = app.add_subcommand("classify", "normalized SLOCC class descriptor");
  cls->add_option("file", fileA)->required();

  auto* enu = app.add_subcommand("enumerate", "catalogue of SLOCC classes");
  enu->add_option("--dims", dims, "system dimensions: 2 m n")
      ->expected(3)
      ->required();
  enu->add_flag("--full-rank-only", fullRankOnly,
                "only classes with local ranks (2, m, n)");

  auto* conv = app.add_subcommand("convert", "non-invertible conversion search");
  conv->add_option("fileA", fileA)->required();
  conv->add_option("fileB", fileB)->required();
  conv->add_option("--budget", budget, "candidate budget");
  conv->add_option("--seed", seed, "search seed");
  conv->add_flag("--verify", verify, "re-apply the witness and report the check");

  auto* hier = app.add_subcommand("hierarchy", "full conversion hierarchy graph");
  hier->add_option("--dims", dims, "system dimensions: 2 m n")
      ->expected(3)
      ->required();
  hier->add_option("--dot", dotPath, "write DOT graph to this file");
  hier->add_option("--budget", budget, "candidate budget per pair");
  hier->add_option("--seed", seed, "search seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*inv) return runInvariants(fileA);
    if (*canon) return runCanonical(fileA);
    if (*equiv) return runEquiv(fileA, fileB, verify);
    if (*cls) return runClassify(fileA);
    if (*enu) {
      if (dims[0] != 2) {
        std::cerr << "first dimension must be 2\n";
        return kExitUsage;
      }
      return runEnumerate(dims, fullRankOnly);
    }
    if (*conv) return runConvert(fileA, fileB, budget, seed, verify);
    if (*hier) {
      if (dims[0] != 2) {
        std::cerr << "first dimension must be 2\n";
        return kExitUsage;
      }
      return runHierarchy(dims, dotPath, budget, seed);
    }
  } catch (const IrrationalSpectrum& e) {
    std::cerr << e.what() << "\n";
    return kExitIrrational;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
