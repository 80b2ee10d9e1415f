#include "isometrica/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isometrica/error.hpp"

namespace isometrica {

namespace {

double round_significant(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

Json pairs_to_json(const std::vector<std::pair<double, double>>& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs) out.push_back(Json::array({a, b}));
  return out;
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::kParseError, what); }

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const Complex& z : m.entries()) data.push_back(Json::array({z.real(), z.imag()}));
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    parse_fail("matrix needs rows, cols and data");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    parse_fail("rows and cols must be nonnegative integers");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const Json& data = j["data"];
  if (!data.is_array() || data.size() != rows * cols)
    parse_fail("data must hold rows * cols entries");
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const Json& z : data) {
    if (z.is_number()) {
      entries.emplace_back(z.get<double>(), 0.0);
      continue;
    }
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      parse_fail("each entry must be [re, im]");
    entries.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

Json to_json(const BlockOperator& a) {
  Json blocks = Json::array();
  for (const auto& b : a.blocks()) blocks.push_back(to_json(b));
  Json j;
  j["blocks"] = std::move(blocks);
  return j;
}

BlockOperator block_operator_from_json(const Json& j) {
  if (j.is_object() && j.contains("blocks")) {
    const Json& blocks = j["blocks"];
    if (!blocks.is_array() || blocks.empty()) parse_fail("blocks must be a nonempty array");
    std::vector<ComplexMatrix> parsed;
    for (const Json& b : blocks) parsed.push_back(matrix_from_json(b));
    try {
      return BlockOperator(std::move(parsed));
    } catch (const Error& e) {
      parse_fail(e.what());
    }
  }
  return BlockOperator(matrix_from_json(j));
}

Json to_json(const PathCertificate& c) {
  Json j;
  j["passed"] = c.passed;
  j["all_partial_isometries"] = c.all_partial_isometries;
  j["max_residual"] = c.max_residual;
  j["max_step"] = c.max_step;
  j["endpoints_match"] = c.endpoints_match;
  j["all_extremal"] = c.all_extremal;
  j["rank_constant"] = c.rank_constant;
  j["t_grid_valid"] = c.t_grid_valid;
  j["min_segment_gap"] = c.min_segment_gap;
  return j;
}

Json to_json(const IsometryPath& path, const PathCertificate& certificate) {
  Json samples = Json::array();
  for (const auto& s : path.samples) {
    Json entry;
    entry["t"] = s.t;
    entry["operator"] = to_json(s.w);
    samples.push_back(std::move(entry));
  }
  Json j;
  j["recipe"] = std::string(to_string(path.recipe));
  j["sample_count"] = path.samples.size();
  j["min_segment_gap"] = path.min_segment_gap;
  j["certificate"] = to_json(certificate);
  j["samples"] = std::move(samples);
  return j;
}

Json to_json(const FivePartDecomposition& d) {
  Json dims;
  dims["ker_p_ker_q"] = d.d00;
  dims["ker_p_ran_q"] = d.d01;
  dims["ran_p_ker_q"] = d.d10;
  dims["ran_p_ran_q"] = d.d11;
  dims["generic_pairs"] = d.angles.size();
  Json angles = Json::array();
  for (double a : d.angles) angles.push_back(round_significant(a, 12));
  Json j;
  j["dimension"] = d.dimension();
  j["dims"] = std::move(dims);
  j["angles"] = std::move(angles);
  j["reconstruction_residual"] = d.reconstruction_residual;
  j["basis"] = to_json(d.basis);
  return j;
}

Json to_json(const ContinuityReport& r) {
  Json j;
  j["is_continuity_point"] = r.is_continuity_point;
  j["witness_block"] = r.witness_block ? Json(*r.witness_block) : Json(nullptr);
  j["observed_jump"] = r.observed_jump;
  j["gap_trace"] = pairs_to_json(r.gap_trace);
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const SampledContinuityReport& r) {
  Json j;
  j["scale"] = "sampled";
  j["x0_index"] = r.x0_index;
  j["neighborhood"] = r.neighborhood;
  j["polar_continuous"] = r.polar_continuous;
  j["support_continuous"] = r.support_continuous;
  j["gap_bounded"] = r.gap_bounded;
  j["verdicts_agree"] = r.verdicts_agree;
  j["polar_modulus"] = r.polar_modulus;
  j["support_modulus"] = r.support_modulus;
  j["min_gap"] = r.min_gap;
  j["rank_jumps"] = r.rank_jumps;
  j["gap_trace"] = pairs_to_json(r.gap_trace);
  return j;
}

std::vector<FamilySample> family_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("family must be a nonempty array");
  std::vector<FamilySample> family;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    if (e.is_object() && e.contains("operator")) {
      if (!e.contains("x") || !e["x"].is_number()) parse_fail("family entry needs a numeric x");
      family.push_back({e["x"].get<double>(), block_operator_from_json(e["operator"])});
    } else {
      family.push_back({static_cast<double>(i), block_operator_from_json(e)});
    }
  }
  return family;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  out << text;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace isometrica
