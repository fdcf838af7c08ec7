#include "oocrn/funcspec_io.hpp"

#include <json.hpp>

#include "oocrn/crn_io.hpp"

namespace oocrn {

namespace {

using nlohmann::json;

rational rational_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number_integer()) return rational(v.get<std::int64_t>());
  if (v.is_string()) return rational::parse(v.get<std::string>());
  fail(errc::parse, std::string("field `") + key + "` must be a rational string");
}

grid grid_from(const json& j) {
  grid g;
  g.p = j.at("p").get<std::uint32_t>();
  g.q = j.at("q").get<std::uint32_t>();
  const json& off = j.at("offset");
  if (!off.is_array() || off.size() != 2) fail(errc::parse, "grid offset must be [o1, o2]");
  g.offset = {off[0].get<std::uint64_t>(), off[1].get<std::uint64_t>()};
  return g;
}

json grid_to(const grid& g) {
  return json{{"p", g.p}, {"q", g.q}, {"offset", {g.offset.n1, g.offset.n2}}};
}

json rational_to(const rational& r) { return r.str(); }

partial_fissure partial_from(const json& j) {
  partial_fissure fs;
  fs.dom = grid_from(j.at("grid"));
  fs.A0 = j.at("A0").get<std::int64_t>();
  fs.A1 = rational_field(j, "A1");
  fs.A2 = rational_field(j, "A2");
  fs.B0 = j.at("B0").get<std::int64_t>();
  fs.B1 = rational_field(j, "B1");
  fs.B2 = rational_field(j, "B2");
  fs.k = j.at("k").get<std::uint32_t>();
  if (j.contains("dips"))
    for (const auto& [key, value] : j.at("dips").items()) {
      std::size_t used = 0;
      std::int64_t idx = 0;
      try {
        idx = std::stoll(key, &used);
      } catch (...) {
        used = 0;
      }
      if (used != key.size()) fail(errc::parse, "bad dip index: " + key);
      fs.dips[idx] = value.get<std::uint32_t>();
    }
  return fs;
}

}  // namespace

function_spec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse, std::string("spec JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "grid_affine") {
      grid_affine_spec ga;
      ga.period = j.at("period").get<std::uint32_t>();
      for (const json& pj : j.at("pieces")) {
        affine_piece piece;
        piece.a0 = rational_field(pj, "a0");
        piece.a1 = rational_field(pj, "a1");
        piece.a2 = rational_field(pj, "a2");
        piece.domain = grid_from(pj.at("domain"));
        ga.pieces.push_back(piece);
      }
      return ga;
    }
    if (kind == "min_of_fissures") {
      min_of_fissures_spec mf;
      mf.period = j.at("period").get<std::uint32_t>();
      for (const json& fj : j.at("fissures")) {
        complete_fissure f;
        for (const json& pj : fj.at("partials")) f.partials.push_back(partial_from(pj));
        mf.fissures.push_back(std::move(f));
      }
      return mf;
    }
    fail(errc::parse, "unknown spec kind: " + kind);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("spec JSON: ") + e.what());
  }
}

std::string serialize_spec(const function_spec& spec) {
  json j;
  if (const auto* ga = std::get_if<grid_affine_spec>(&spec)) {
    j["kind"] = "grid_affine";
    j["period"] = ga->period;
    j["pieces"] = json::array();
    for (const affine_piece& piece : ga->pieces)
      j["pieces"].push_back(json{{"a0", rational_to(piece.a0)},
                                 {"a1", rational_to(piece.a1)},
                                 {"a2", rational_to(piece.a2)},
                                 {"domain", grid_to(piece.domain)}});
  } else {
    const auto& mf = std::get<min_of_fissures_spec>(spec);
    j["kind"] = "min_of_fissures";
    j["period"] = mf.period;
    j["fissures"] = json::array();
    for (const complete_fissure& f : mf.fissures) {
      json fj{{"partials", json::array()}};
      for (const partial_fissure& fs : f.partials) {
        json dips = json::object();
        for (const auto& [i, d] : fs.dips) dips[std::to_string(i)] = d;
        fj["partials"].push_back(json{{"grid", grid_to(fs.dom)},
                                      {"A0", fs.A0},
                                      {"A1", rational_to(fs.A1)},
                                      {"A2", rational_to(fs.A2)},
                                      {"B0", fs.B0},
                                      {"B1", rational_to(fs.B1)},
                                      {"B2", rational_to(fs.B2)},
                                      {"k", fs.k},
                                      {"dips", dips}});
      }
      j["fissures"].push_back(std::move(fj));
    }
  }
  return j.dump(2) + "\n";
}

function_spec load_spec_file(const std::string& path) { return parse_spec(read_file(path)); }

}  // namespace oocrn
