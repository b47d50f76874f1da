#pragma once
// File formats and serialization: JSON state/pencil files with exact
// rational strings, structured JSON output for every operation, and DOT
// emission for the conversion hierarchy.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pencils/catalogue.hpp"

namespace pencils::io {

using Json = nlohmann::ordered_json;

inline Json matrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError("matrix must be a non-empty array of rows");
  size_t rows = j.size(), cols = j[0].size();
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_string()) throw ParseError("matrix entry must be string");
      m(r, c) = Scalar::parse(j[r][c].get<std::string>());
    }
  }
  return m;
}

inline Json stateToJson(const State& s) {
  Json j;
  j["dims"] = {2, s.m(), s.n()};
  j["amplitudes"] = {matrixToJson(s.R), matrixToJson(s.S)};
  return j;
}

inline State stateFromJson(const Json& j) {
  if (!j.contains("dims") || !j.contains("amplitudes"))
    throw ParseError("state file needs dims and amplitudes");
  const Json& dims = j["dims"];
  if (!dims.is_array() || dims.size() != 3 || dims[0].get<long>() != 2)
    throw ParseError("dims must be [2, m, n]");
  const Json& amps = j["amplitudes"];
  if (!amps.is_array() || amps.size() != 2)
    throw ParseError("amplitudes must hold two m x n slices");
  Matrix r = matrixFromJson(amps[0]), s = matrixFromJson(amps[1]);
  if (r.rows() != dims[1].get<size_t>() || r.cols() != dims[2].get<size_t>())
    throw ParseError("amplitude shape does not match dims");
  return {std::move(r), std::move(s)};
}

inline Json pencilToJson(const Pencil& p) {
  Json j;
  j["R"] = matrixToJson(p.R);
  j["S"] = matrixToJson(p.S);
  return j;
}

inline Pencil pencilFromJson(const Json& j) {
  if (!j.contains("R") || !j.contains("S"))
    throw ParseError("pencil file needs R and S");
  return {matrixFromJson(j["R"]), matrixFromJson(j["S"])};
}

// A file holds either a state or a pencil; states are canonical for the
// CLI, pencil files are accepted wherever only the pencil matters.
inline State stateFromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("amplitudes")) return stateFromJson(j);
  if (j.contains("R")) return pencilToState(pencilFromJson(j));
  throw ParseError("file is neither a state nor a pencil: " + path);
}

inline Json invariantsToJson(const KroneckerInvariants& inv) {
  Json j;
  j["normalRank"] = inv.normalRank;
  j["rightMinimalIndices"] = inv.rightMinimalIndices;
  j["leftMinimalIndices"] = inv.leftMinimalIndices;
  Json fin = Json::array();
  for (const auto& [x, degs] : inv.finiteDivisors) {
    Json entry;
    entry["point"] = x.str();
    entry["degrees"] = degs;
    fin.push_back(std::move(entry));
  }
  j["finiteDivisors"] = std::move(fin);
  j["infiniteDivisorDegrees"] = inv.infiniteDivisorDegrees;
  j["zeroIndexNumber"] = inv.zeroIndexNumber();
  j["transposeZeroIndexNumber"] = inv.transposeZeroIndexNumber();
  return j;
}

inline Json lftToJson(const LFT& t) {
  Json j;
  j["a"] = t.a.str();
  j["b"] = t.b.str();
  j["c"] = t.c.str();
  j["d"] = t.d.str();
  return j;
}

inline Json witnessToJson(const SloccWitness& w) {
  Json j;
  j["A"] = matrixToJson(w.A);
  j["B"] = matrixToJson(w.B);
  j["C"] = matrixToJson(w.C);
  return j;
}

inline Json localRanksToJson(const LocalRanks& r) {
  return Json::array({r.rA, r.rB, r.rC});
}

inline Json descriptorToJson(const ClassDescriptor& d) {
  Json j;
  j["label"] = d.label;
  j["aliases"] = d.aliases;
  j["effectiveDims"] = {d.m, d.n};
  j["localRanks"] = localRanksToJson(d.ranks);
  j["tensorRank"] = d.tensorRank;
  j["invariants"] = invariantsToJson(d.inv);
  return j;
}

inline Json catalogueToJson(const Catalogue& cat) {
  Json j;
  j["finite"] = cat.finite;
  if (!cat.finite) {
    j["infiniteFamilies"] = cat.infiniteWitness;
    return j;
  }
  j["count"] = cat.classes.size();
  Json arr = Json::array();
  for (const auto& d : cat.classes) arr.push_back(descriptorToJson(d));
  j["classes"] = std::move(arr);
  return j;
}

inline Json convertVerdictToJson(const ConvertVerdict& v) {
  Json j;
  switch (v.tag) {
    case ConvertVerdict::Tag::Convertible:
      j["verdict"] = "Convertible";
      j["aliceOp"] = matrixToJson(v.aliceOp);
      j["bobOp"] = matrixToJson(v.bobOp);
      j["charlieOp"] = matrixToJson(v.charlieOp);
      if (v.residual) j["residual"] = witnessToJson(*v.residual);
      break;
    case ConvertVerdict::Tag::Obstructed:
      j["verdict"] = "Obstructed";
      j["reason"] = v.reason;
      break;
    case ConvertVerdict::Tag::Undecided:
      j["verdict"] = "Undecided";
      j["reason"] = v.reason;
      break;
  }
  return j;
}

inline std::string nodeCaption(const ClassDescriptor& d) {
  std::ostringstream os;
  os << d.label;
  if (!d.aliases.empty()) os << " [" << d.aliases.front() << "]";
  os << "\\n(" << d.ranks.rA << "," << d.ranks.rB << "," << d.ranks.rC
     << ") rank " << d.tensorRank;
  return os.str();
}

inline std::string hierarchyToDot(const Hierarchy& h) {
  std::ostringstream os;
  os << "digraph slocc {\n";
  os << "  rankdir=TB;\n  node [shape=box];\n";
  for (size_t i = 0; i < h.catalogue.classes.size(); ++i)
    os << "  c" << i << " [label=\"" << nodeCaption(h.catalogue.classes[i])
       << "\"];\n";
  for (const auto& e : h.edges)
    os << "  c" << e.src << " -> c" << e.dst << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace pencils::io
