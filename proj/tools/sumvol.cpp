/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: parse set / partition / cover JSON, dispatch the
// library operations, emit reports and certificates as JSON.
//
// Exit codes: 0 success; 1 malformed input or violated precondition;
// 2 verified-inequality violation (reserved: never expected for the
// theorems, it signals either a tampered certificate or a library bug).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumvol/json_io.hpp"
#include "sumvol/sumvol.hpp"

namespace {

using namespace sumvol;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("malformed JSON in '" + path + "': " + e.what());
  }
}

void emit(const json& out, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw input_error("cannot write '" + out_path + "'");
    f << out.dump(2) << "\n";
  }
}

enum class TupleKind { one_d, integer, boxes, polygons };

struct Tuple {
  TupleKind kind;
  std::vector<IntervalUnion> one_d;
  std::vector<IntegerSet> ints;
  std::vector<BoxUnion> boxes;
  std::vector<ConvexPolygon> polygons;
  std::size_t size() const {
    switch (kind) {
      case TupleKind::one_d: return one_d.size();
      case TupleKind::integer: return ints.size();
      case TupleKind::boxes: return boxes.size();
      default: return polygons.size();
    }
  }
};

Tuple read_tuple(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.contains("sets") || !j.at("sets").is_array() || j.at("sets").empty())
    throw input_error("expected {\"sets\": [...]} with at least one set");
  Tuple tuple{TupleKind::one_d, {}, {}, {}, {}};
  const json& sets = j.at("sets");
  if (sets.front().contains("intervals")) {
    tuple.kind = TupleKind::one_d;
    for (const auto& s : sets) tuple.one_d.push_back(interval_union_from_json(s));
  } else if (sets.front().contains("integers")) {
    tuple.kind = TupleKind::integer;
    for (const auto& s : sets) tuple.ints.push_back(integer_set_from_json(s));
  } else if (sets.front().contains("boxes")) {
    tuple.kind = TupleKind::boxes;
    for (const auto& s : sets) tuple.boxes.push_back(box_union_from_json(s));
  } else if (sets.front().contains("polygon")) {
    tuple.kind = TupleKind::polygons;
    for (const auto& s : sets) tuple.polygons.push_back(polygon_from_json(s));
  } else {
    throw input_error("sets must carry \"intervals\", \"integers\", \"boxes\" or \"polygon\"");
  }
  return tuple;
}

/// --partition accepts a JSON file path or the named partitions
/// "leave-one-out" / "singletons" (instantiated for the tuple's M).
FractionalPartition read_partition(const std::string& spec_text, int m) {
  if (spec_text == "leave-one-out") return leave_one_out(m);
  if (spec_text == "singletons") return singleton_partition(m);
  return partition_from_json(read_json_file(spec_text));
}

json verify_report_json(const FsaVerifyReport& r) { return report_to_json(r); }

SetFunction read_set_function(const std::string& function_path, const std::string& sets_path) {
  if (!function_path.empty() && !sets_path.empty())
    throw input_error("give either --function or --sets, not both");
  if (!function_path.empty()) return set_function_from_json(read_json_file(function_path));
  if (sets_path.empty()) throw input_error("need --function or --sets");
  const Tuple tuple = read_tuple(sets_path);
  switch (tuple.kind) {
    case TupleKind::one_d: return nu_vector(tuple.one_d).as_set_function();
    case TupleKind::integer: return nu_vector(tuple.ints).as_set_function();
    case TupleKind::boxes: return nu_vector(tuple.boxes).as_set_function();
    default: throw input_error("nu vectors take interval, integer or box tuples");
  }
}

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact volumes of Minkowski subset sums, fractional superadditivity "
               "certificates, and set-function cone membership"};
  app.require_subcommand(1);

  std::string sets_path, partition_spec, cover_path, function_path, factors_path, out_path,
      cert_path, which, kind, x_text;
  int m_opt = 0, layer = 0, jobs = 1, k_param = 1, d_param = 1;
  std::uint32_t resolution = 0;
  double tolerance = 1e-9;
  std::string alpha_text = "0", beta_text = "0", c_text = "0";

  auto* cmd_sum = app.add_subcommand("sum", "Minkowski sum of a tuple of sets");
  cmd_sum->add_option("--sets", sets_path, "tuple JSON file")->required();
  cmd_sum->add_option("--resolution", resolution, "also report the 1-D grid-oracle estimate");
  cmd_sum->add_option("--out", out_path);

  auto* cmd_volume = app.add_subcommand("volume", "exact volume / cardinality / area of a set");
  cmd_volume->add_option("--sets", sets_path, "set or tuple JSON file")->required();
  cmd_volume->add_option("--out", out_path);

  auto* cmd_nu = app.add_subcommand("nu", "all subset-sum volumes of a tuple");
  cmd_nu->add_option("--sets", sets_path)->required();
  cmd_nu->add_option("--out", out_path);

  auto* cmd_fsa = app.add_subcommand("check-fsa", "fractional superadditivity of a set function");
  cmd_fsa->add_option("--function", function_path, "set function JSON file");
  cmd_fsa->add_option("--sets", sets_path, "tuple JSON file (checks its nu vector)");
  cmd_fsa->add_option("--method", which, "core | enum | both (default core)");
  cmd_fsa->add_option("--out", out_path);

  auto* cmd_sm = app.add_subcommand("check-supermodular", "supermodularity of a set function");
  cmd_sm->add_option("--function", function_path);
  cmd_sm->add_option("--sets", sets_path);
  cmd_sm->add_option("--out", out_path);

  auto* cmd_certify = app.add_subcommand("certify", "constructive fractional-inequality certificate");
  cmd_certify->add_option("kind", kind, "1d | int | boxes")->required();
  cmd_certify->add_option("--sets", sets_path)->required();
  cmd_certify->add_option("--partition", partition_spec, "JSON file | leave-one-out | singletons");
  cmd_certify->add_option("--cover", cover_path, "regular cover JSON file");
  cmd_certify->add_option("--layer", layer, "emit only the pieces of one layer k");
  cmd_certify->add_option("--jobs", jobs, "compute layers in parallel");
  cmd_certify->add_option("--out", out_path);

  auto* cmd_partitions = app.add_subcommand("partitions", "fractional partition utilities");
  auto* cmd_extremes = cmd_partitions->add_subcommand("extremes", "vertices of the partition polytope");
  cmd_extremes->add_option("--M", m_opt)->required();
  cmd_extremes->add_option("--out", out_path);
  auto* cmd_expand = cmd_partitions->add_subcommand("expand", "expand a partition into a regular cover");
  cmd_expand->add_option("--partition", partition_spec)->required();
  cmd_expand->add_option("--M", m_opt, "ground size for the named partitions");
  cmd_expand->add_option("--out", out_path);

  auto* cmd_realize = app.add_subcommand("realize", "two sets with prescribed volumes (Lyusternik region, M = 2)");
  cmd_realize->add_option("--alpha", alpha_text, "side length of A1 (|A1| = alpha^d)")->required();
  cmd_realize->add_option("--beta", beta_text, "side length of A2 (|A2| = beta^d)")->required();
  cmd_realize->add_option("--c", c_text, "target |A1+A2|")->required();
  cmd_realize->add_option("--d", d_param, "ambient dimension")->required();
  cmd_realize->add_option("--out", out_path);

  auto* cmd_counter = app.add_subcommand("counterexample", "the non-supermodularity witnesses");
  cmd_counter->add_option("which", which, "supermodularity_1d | supermodularity_cubes | alpha_beta_fixtures")
      ->required();
  cmd_counter->add_option("--k", k_param);
  cmd_counter->add_option("--d", d_param);
  cmd_counter->add_option("--M", m_opt);
  cmd_counter->add_option("--out", out_path);

  auto* cmd_extend = app.add_subcommand("extend", "concave 1-homogeneous extension");
  auto* cmd_eval = cmd_extend->add_subcommand("eval", "evaluate F(x)");
  cmd_eval->add_option("--function", function_path)->required();
  cmd_eval->add_option("--x", x_text, "comma-separated rationals, e.g. 2,1,1")->required();
  cmd_eval->add_option("--out", out_path);

  auto* cmd_product = app.add_subcommand("verify-product", "d-th-root inequality for product sets");
  cmd_product->add_option("--factors", factors_path, "product tuple JSON file")->required();
  cmd_product->add_option("--partition", partition_spec)->required();
  cmd_product->add_option("--tolerance", tolerance);
  cmd_product->add_option("--out", out_path);

  auto* cmd_verify_cert = app.add_subcommand("verify-certificate", "re-verify a serialized certificate");
  cmd_verify_cert->add_option("certificate", cert_path, "certificate JSON file")->required();
  cmd_verify_cert->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*cmd_sum) {
      const Tuple tuple = read_tuple(sets_path);
      json out;
      switch (tuple.kind) {
        case TupleKind::one_d: {
          IntervalUnion total = tuple.one_d.front();
          for (std::size_t i = 1; i < tuple.one_d.size(); ++i)
            total = minkowski_sum(total, tuple.one_d[i]);
          out["sum"] = set_to_json(total);
          out["volume"] = rational_to_json(total.measure());
          if (resolution > 0 && tuple.one_d.size() == 2)
            out["grid_estimate"] =
                rational_to_json(grid_oracle(tuple.one_d[0], tuple.one_d[1], resolution));
          break;
        }
        case TupleKind::integer: {
          IntegerSet total = tuple.ints.front();
          for (std::size_t i = 1; i < tuple.ints.size(); ++i) total = sumset(total, tuple.ints[i]);
          out["sum"] = set_to_json(total);
          out["cardinality"] = total.cardinality();
          break;
        }
        case TupleKind::boxes: {
          BoxUnion total = tuple.boxes.front();
          for (std::size_t i = 1; i < tuple.boxes.size(); ++i)
            total = box_minkowski_sum(total, tuple.boxes[i]);
          out["sum"] = set_to_json(total);
          out["volume"] = rational_to_json(union_volume(total));
          break;
        }
        case TupleKind::polygons: {
          ConvexPolygon total = tuple.polygons.front();
          for (std::size_t i = 1; i < tuple.polygons.size(); ++i)
            total = polygon_minkowski_sum(total, tuple.polygons[i]);
          out["sum"] = set_to_json(total);
          out["volume"] = rational_to_json(total.area());
          break;
        }
      }
      emit(out, out_path);
    } else if (*cmd_volume) {
      const json j = read_json_file(sets_path);
      auto one = [](const json& s) -> json {
        if (s.contains("polygon")) return rational_to_json(polygon_from_json(s).area());
        const SetVariant v = set_from_json(s);
        if (std::holds_alternative<IntervalUnion>(v))
          return rational_to_json(std::get<IntervalUnion>(v).measure());
        if (std::holds_alternative<IntegerSet>(v))
          return std::get<IntegerSet>(v).cardinality();
        return rational_to_json(union_volume(std::get<BoxUnion>(v)));
      };
      json out;
      if (j.contains("sets")) {
        out["volumes"] = json::array();
        for (const auto& s : j.at("sets")) out["volumes"].push_back(one(s));
      } else {
        out["volume"] = one(j);
      }
      emit(out, out_path);
    } else if (*cmd_nu) {
      const Tuple tuple = read_tuple(sets_path);
      NuVector nu;
      switch (tuple.kind) {
        case TupleKind::one_d: nu = nu_vector(tuple.one_d); break;
        case TupleKind::integer: nu = nu_vector(tuple.ints); break;
        case TupleKind::boxes: nu = nu_vector(tuple.boxes); break;
        default: throw input_error("nu vectors take interval, integer or box tuples");
      }
      emit(nu_vector_to_json(nu), out_path);
    } else if (*cmd_fsa) {
      const SetFunction v = read_set_function(function_path, sets_path);
      const std::string method = which.empty() ? "core" : which;
      json out;
      out["M"] = v.M;
      out["method"] = method;
      if (method == "core" || method == "both") {
        const FsaCoreReport report = fsa_check_core(v);
        out["fsa"] = report.fsa;
        out["subgames"] = json::array();
        for (const auto& sub : report.subgames)
          out["subgames"].push_back(core_certificate_to_json(sub));
      }
      if (method == "enum" || method == "both") {
        const FsaEnumReport report = fsa_check_enum(v);
        out["fsa_enum"] = report.fsa;
        if (!report.fsa) {
          out["enum_witness"] = {{"T", mask_to_string(report.ground)},
                                 {"partition", partition_to_json(report.witness)},
                                 {"bound", rational_to_json(report.bound)},
                                 {"value", rational_to_json(v.at(report.ground))}};
        }
        if (method == "enum") out["fsa"] = report.fsa;
        if (method == "both" && out.at("fsa").get<bool>() != report.fsa)
          throw verification_error("core and enumeration FSA verdicts disagree");
      }
      emit(out, out_path);
    } else if (*cmd_sm) {
      const SetFunction v = read_set_function(function_path, sets_path);
      const SupermodularityReport report = is_supermodular(v);
      json out{{"supermodular", report.supermodular}};
      if (!report.supermodular) {
        out["witness"] = {{"S", mask_to_string(report.s)},
                          {"T", mask_to_string(report.t)},
                          {"lhs", rational_to_json(report.lhs)},
                          {"rhs", rational_to_json(report.rhs)}};
      }
      emit(out, out_path);
    } else if (*cmd_certify) {
      const Tuple tuple = read_tuple(sets_path);
      const int m = static_cast<int>(tuple.size());
      if (partition_spec.empty() == cover_path.empty())
        throw input_error("give exactly one of --partition or --cover");
      detail::CoverInput input = !partition_spec.empty()
                                     ? detail::resolve_cover(read_partition(partition_spec, m), m)
                                     : detail::resolve_cover(
                                           cover_from_json(read_json_file(cover_path)), m);
      if ((kind == "1d") != (tuple.kind == TupleKind::one_d) ||
          (kind == "int") != (tuple.kind == TupleKind::integer) ||
          (kind == "boxes") != (tuple.kind == TupleKind::boxes))
        throw input_error("certify kind does not match the sets file");
      if (layer > 0) {
        if (kind != "1d") throw input_error("--layer is available for 1-D tuples only");
        const auto normalized = normalize_tuple(tuple.one_d);
        const auto pieces = pieces_1d(normalized, input.cover, layer);
        json out = json::array();
        for (const auto& piece : pieces) {
          json elems = json::array();
          for (int e : mask_elements(piece.translator)) elems.push_back(e);
          out.push_back({{"k", piece.k},
                         {"j", piece.j},
                         {"translator", elems},
                         {"window",
                          {rational_to_json(piece.window_lo), rational_to_json(piece.window_hi)}},
                         {"piece", set_to_json(piece.piece)}});
        }
        emit(out, out_path);
      } else {
        Certificate cert;
        if (kind == "1d")
          cert = detail::certify_1d_impl(tuple.one_d, input, jobs, nullptr);
        else if (kind == "int")
          cert = detail::certify_int_impl(tuple.ints, input, jobs);
        else
          cert = detail::certify_boxes_impl(tuple.boxes, input, jobs, 1);
        emit(certificate_to_json(cert), out_path);
      }
    } else if (*cmd_extremes) {
      const auto partitions = extreme_partitions(m_opt);
      json out{{"M", m_opt}, {"count", partitions.size()}};
      out["partitions"] = json::array();
      for (const auto& p : partitions) out["partitions"].push_back(partition_to_json(p));
      emit(out, out_path);
    } else if (*cmd_expand) {
      if ((partition_spec == "leave-one-out" || partition_spec == "singletons") && m_opt == 0)
        throw input_error("named partitions need --M");
      const FractionalPartition p = read_partition(partition_spec, m_opt);
      emit(cover_to_json(to_regular_cover(p)), out_path);
    } else if (*cmd_realize) {
      const Rational alpha = parse_rational(alpha_text);
      const Rational beta = parse_rational(beta_text);
      const Rational c = parse_rational(c_text);
      const auto [a1, a2] = realize_two(alpha, beta, c, d_param);
      const BoxUnion total = box_minkowski_sum(a1, a2);
      json out{{"A1", set_to_json(a1)},
               {"A2", set_to_json(a2)},
               {"volumes",
                {{"A1", rational_to_json(union_volume(a1))},
                 {"A2", rational_to_json(union_volume(a2))},
                 {"sum", rational_to_json(union_volume(total))}}}};
      emit(out, out_path);
    } else if (*cmd_counter) {
      json out;
      if (which == "supermodularity_1d" || which == "supermodularity_cubes") {
        const CounterexampleReport report = which == "supermodularity_1d"
                                                ? counterexample_supermodularity_1d()
                                                : counterexample_supermodularity_cubes(k_param, d_param);
        out["nu"] = nu_vector_to_json(report.nu);
        out["witness"] = {{"S", mask_to_string(report.s)}, {"T", mask_to_string(report.t)}};
        out["lhs"] = rational_to_json(report.lhs);
        out["rhs"] = rational_to_json(report.rhs);
        out["supermodular_at_witness"] = report.lhs >= report.rhs;
      } else if (which == "alpha_beta_fixtures") {
        const auto [alpha, beta] = alpha_beta_fixtures(m_opt == 0 ? 3 : m_opt);
        out["alpha"] = set_function_to_json(alpha);
        out["beta"] = set_function_to_json(beta);
      } else {
        throw input_error("unknown counterexample '" + which + "'");
      }
      emit(out, out_path);
    } else if (*cmd_eval) {
      const SetFunction f = set_function_from_json(read_json_file(function_path));
      const auto x = parse_vector(x_text);
      emit(json{{"value", rational_to_json(concave_extension_eval(f, x))}}, out_path);
    } else if (*cmd_product) {
      const json j = read_json_file(factors_path);
      ProductTuple tuple;
      tuple.M = j.at("M").get<int>();
      for (const auto& row : j.at("factors")) {
        std::vector<ProductFactor> factors;
        for (const auto& f : row) factors.push_back(factor_from_json(f));
        tuple.factors.push_back(std::move(factors));
      }
      const FractionalPartition p = read_partition(partition_spec, tuple.M);
      const ProductReport report = verify_product(tuple, p, tolerance);
      json out{{"dim", report.total_dim},
               {"lhs", report.lhs},
               {"rhs", report.rhs},
               {"slack", report.slack},
               {"tolerance", report.tolerance},
               {"holds", report.holds}};
      emit(out, out_path);
      if (!report.holds) return 2;
    } else if (*cmd_verify_cert) {
      const Certificate cert = certificate_from_json(read_json_file(cert_path));
      verify_certificate(cert);
      emit(json{{"verified", true},
                {"lhs", rational_to_json(cert.lhs)},
                {"rhs", rational_to_json(cert.rhs)},
                {"slack", rational_to_json(cert.slack)}},
           out_path);
    }
  } catch (const verification_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
