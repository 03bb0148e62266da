#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vcert/cli.hpp"

namespace {

using vcert::cli::Result;

vcert::RatVector parse_rat_list(const std::string& text) {
  if (!text.empty() && text.front() == '[') return vcert::rat_vector_from_json(vcert::parse_json_text(text));
  vcert::RatVector v;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    v.push_back(vcert::parse_rat(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

vcert::IntVector parse_int_list(const std::string& text) {
  vcert::IntVector out;
  for (const auto& r : parse_rat_list(text)) {
    if (!vcert::is_integer(r) || !r.get_num().fits_slong_p()) throw vcert::InvalidInput("--t must be an integer vector");
    out.push_back(r.get_num().get_si());
  }
  return out;
}

int emit(const Result& r, const std::string& out_path) {
  const std::string text = vcert::cli::render(r.body);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "vcert: cannot write " << out_path << "\n";
      return vcert::cli::kInvalid;
    }
    out << text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of parallelotopes as affine images of Voronoi polytopes"};
  app.require_subcommand(1);
  app.fallthrough();

  vcert::cli::Options opt;
  std::size_t radius = 0;
  std::string out_path;
  app.add_option("--seed", opt.seed, "Seed for generatrissa sampling");
  auto* radius_opt = app.add_option("--radius", radius, "Patch radius (graph distance from 0), at most 4");
  app.add_option("--out", out_path, "Write JSON here instead of stdout");

  std::string gen_name, gen_instance;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("name", gen_name, "cube:n | hexagonal | fcc | gram:<json> | affine:<json> | perturb:i,beta")
      ->required();
  auto* gen_inst_opt = gen->add_option("instance", gen_instance, "Instance file transformed by affine/perturb");

  std::string file;
  auto* certify = app.add_subcommand("certify", "Run the certification pipeline");
  certify->add_option("file", file, "Instance file, or - for stdin")->required();
  certify->add_option("--samples", opt.samples, "Interior samples for the generatrissa check");
  certify->add_flag("--approx-map", opt.approx_map, "Also print a floating-point A with D = A^T A");

  std::string which;
  auto* report = app.add_subcommand("report", "Print one module report");
  report->add_option("which", which, "belts | venkov | identities | primitivity | delaunay | patch | pegs | generatrissa")
      ->required();
  report->add_option("file", file, "Instance file, or - for stdin")->required();

  auto* patch = app.add_subcommand("patch", "Same as report patch");
  patch->add_option("file", file)->required();
  auto* identities = app.add_subcommand("check-identities", "Same as report identities");
  identities->add_option("file", file)->required();
  auto* primitivity = app.add_subcommand("primitivity", "Same as report primitivity");
  primitivity->add_option("file", file)->required();

  std::string x_text, t_text;
  auto* generatrissa = app.add_subcommand("generatrissa", "Generatrissa checks and an optional l(x;t) query");
  generatrissa->add_option("file", file)->required();
  auto* x_opt = generatrissa->add_option("--x", x_text, "Point x, e.g. 1/2,0 or [\"1/2\",\"0\"]");
  auto* t_opt = generatrissa->add_option("--t", t_text, "Lattice vector t, e.g. 1,0");
  x_opt->needs(t_opt);
  t_opt->needs(x_opt);

  std::string form_text;
  auto* delaunay = app.add_subcommand("delaunay", "Delaunay cells at the vertices of the Voronoi cell");
  auto* form_opt = delaunay->add_option("--form", form_text, "Gram matrix JSON");
  auto* delaunay_file = delaunay->add_option("file", file, "Instance file instead of --form");
  form_opt->excludes(delaunay_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vcert::cli::kInvalid;
  }
  if (*radius_opt) opt.radius = radius;

  try {
    Result r;
    if (*gen) {
      std::optional<std::string> inst;
      if (*gen_inst_opt) inst = gen_instance;
      r = vcert::cli::cmd_gen(gen_name, inst);
    } else if (*certify) {
      r = vcert::cli::cmd_certify(file, opt);
    } else if (*report) {
      r = vcert::cli::cmd_report(which, file, opt);
    } else if (*patch) {
      r = vcert::cli::cmd_report("patch", file, opt);
    } else if (*identities) {
      r = vcert::cli::cmd_report("identities", file, opt);
    } else if (*primitivity) {
      r = vcert::cli::cmd_report("primitivity", file, opt);
    } else if (*generatrissa) {
      std::optional<vcert::cli::GeneratrissaQuery> q;
      if (*x_opt) q = vcert::cli::GeneratrissaQuery{parse_rat_list(x_text), parse_int_list(t_text)};
      r = vcert::cli::report_generatrissa(vcert::cli::read_instance(file), opt, q);
    } else if (*delaunay) {
      if (*form_opt)
        r = vcert::cli::report_delaunay(vcert::form_from_json(vcert::parse_json_text(form_text)), opt);
      else if (*delaunay_file)
        r = vcert::cli::report_delaunay(vcert::cli::read_instance(file), opt);
      else
        throw vcert::InvalidInput("delaunay needs --form or an instance file");
    }
    return emit(r, out_path);
  } catch (const vcert::Error& e) {
    std::cerr << "vcert: " << e.what() << "\n";
    return vcert::cli::kInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "vcert: " << e.what() << "\n";
    return vcert::cli::kInvalid;
  }
}
