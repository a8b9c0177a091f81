// leonard: command-line front end for the parameter-array library.
//
// Every command reads documents in the text format of document.hpp from a
// path, or from stdin when the path is "-". Exit status is 0 on success and
// 1 on invalid input, failed checks or errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "leonard/leonard.hpp"

namespace {

using leonard::Field;
using leonard::ParameterArray;
using nlohmann::json;

struct Options {
  std::string field;
  std::vector<std::string> paths;
  bool json = false;
  bool brute_force = false;
  bool certify = false;
  std::string type = "II";
  int d = 3;
  std::uint64_t seed = 0;
  std::string q;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<Field> field_override(const Options& o) {
  if (o.field.empty()) return std::nullopt;
  return Field::parse(o.field);
}

std::vector<ParameterArray> load_all(const Options& o, const std::string& path) {
  try {
    return leonard::parse_documents(read_input(path), field_override(o));
  } catch (const leonard::ParseError& e) {
    throw std::runtime_error(path + ":" + e.what());
  }
}

ParameterArray load_one(const Options& o, const std::string& path) {
  auto docs = load_all(o, path);
  if (docs.size() != 1)
    throw std::runtime_error(path + ": expected one document, found " + std::to_string(docs.size()));
  return docs.front();
}

json map_json(const leonard::AffineMap& m) {
  return json::array({m.xi.to_string(), m.zeta.to_string(), m.xi_star.to_string(), m.zeta_star.to_string()});
}

int cmd_validate(const Options& o) {
  auto docs = load_all(o, o.paths.at(0));
  bool all_ok = !docs.empty();
  json out = json::array();
  for (std::size_t k = 0; k < docs.size(); ++k) {
    auto rep = leonard::validate(docs[k]);
    all_ok = all_ok && rep.ok();
    if (o.json) {
      json conds = json::array();
      for (std::size_t c = 0; c < rep.pa.size(); ++c)
        conds.push_back({{"name", "PA" + std::to_string(c + 1)},
                         {"pass", rep.pa[c].pass},
                         {"witness", rep.pa[c].witness},
                         {"note", rep.pa[c].note}});
      out.push_back({{"valid", rep.ok()}, {"conditions", conds}});
      continue;
    }
    if (docs.size() > 1) std::cout << "# document " << k + 1 << "\n";
    std::cout << rep.to_string() << (rep.ok() ? "VALID" : "INVALID") << "\n";
  }
  if (o.json) std::cout << (docs.size() == 1 ? out[0] : out).dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int require_valid(const ParameterArray& pa) {
  auto rep = leonard::validate(pa);
  if (rep.ok()) return 0;
  std::cerr << "input is not a valid parameter array:\n" << rep.to_string();
  return 1;
}

int cmd_classify(const Options& o) {
  ParameterArray pa = load_one(o, o.paths.at(0));
  if (require_valid(pa)) return 1;
  auto mc = leonard::main_case(pa);
  auto self = leonard::pair_self_maps(pa);
  auto swap = leonard::pair_swap_maps(pa);
  std::optional<leonard::Partition> brute;
  if (o.brute_force) brute = leonard::brute_force_partition(pa);
  bool agree = !brute || leonard::partition_to_string(*brute) == leonard::partition_to_string(mc.classes);
  if (o.json) {
    json classes = json::array();
    for (const auto& cls : mc.classes) {
      json c = json::array();
      for (auto g : cls) c.push_back(std::string(g.name()));
      classes.push_back(c);
    }
    json j = {{"case", leonard::case_name(mc.tag)}, {"classes", classes}};
    j["self_maps"] = json::array();
    for (const auto& m : self) j["self_maps"].push_back(map_json(m));
    j["swap_maps"] = json::array();
    for (const auto& m : swap) j["swap_maps"].push_back(map_json(m));
    if (brute) j["brute_force_agrees"] = agree;
    std::cout << j.dump(2) << "\n";
    return agree ? 0 : 1;
  }
  std::cout << "case: " << leonard::case_name(mc.tag) << "\n";
  std::cout << "classes: " << leonard::partition_to_string(mc.classes) << "\n";
  std::cout << "self-maps: " << self.size() << "\n";
  for (const auto& m : self) std::cout << "  " << m.to_string() << "\n";
  std::cout << "swap-maps: " << swap.size() << "\n";
  for (const auto& m : swap) std::cout << "  " << m.to_string() << "\n";
  if (brute) {
    std::cout << "brute-force: " << leonard::partition_to_string(*brute) << (agree ? " (agrees)" : " (DIFFERS)")
              << "\n";
  }
  return agree ? 0 : 1;
}

int cmd_orbit(const Options& o) {
  ParameterArray pa = load_one(o, o.paths.at(0));
  if (require_valid(pa)) return 1;
  bool first = true;
  for (const auto& [g, r] : leonard::orbit(pa)) {
    if (!first) std::cout << "---\n";
    first = false;
    std::cout << leonard::print_document(r, {"relative: " + std::string(g.name())});
  }
  return 0;
}

int cmd_affine_solve(const Options& o) {
  if (o.paths.size() != 2) throw std::runtime_error("affine-solve takes two documents");
  ParameterArray src = load_one(o, o.paths[0]);
  ParameterArray dst = load_one(o, o.paths[1]);
  if (require_valid(src) || require_valid(dst)) return 1;
  auto m = leonard::solve(src, dst);
  std::cout << (m ? m->to_string() : "none") << "\n";
  return 0;
}

int cmd_realize(const Options& o) {
  ParameterArray pa = load_one(o, o.paths.at(0));
  if (require_valid(pa)) return 1;
  auto r = leonard::split_realize(pa);
  std::cout << "A:\n" << r.A.to_string() << "A*:\n" << r.Astar.to_string();
  if (!o.certify) return 0;
  auto c = leonard::certify(pa);
  auto yes = [](bool b) { return b ? "ok" : "FAILED"; };
  std::cout << "idempotents: " << yes(c.idempotents) << "\n";
  std::cout << "tridiagonal: " << yes(c.tridiagonal) << "\n";
  std::cout << "split sequences: " << yes(c.split_sequences) << "\n";
  std::cout << (c.ok() ? "CERTIFIED" : "NOT CERTIFIED") << "\n";
  return c.ok() ? 0 : 1;
}

int cmd_fit(const Options& o) {
  ParameterArray pa = load_one(o, o.paths.at(0));
  if (require_valid(pa)) return 1;
  auto tag = leonard::detect_type(pa);
  std::optional<leonard::Scalar> hint;
  if (!o.q.empty()) hint = tag.q.field().parse_element(o.q);
  auto td = leonard::fit(pa, hint);
  auto predicted = leonard::predict_case(td);
  if (o.json) {
    json j = {{"type", leonard::type_name(td.kind)}, {"d", td.d}, {"field", td.field().name()}};
    for (const auto& [k, v] : td.entries()) j["scalars"][k] = v.to_string();
    if (td.kind == leonard::TypeKind::I) j["q_inverse"] = td.q.inverse().to_string();
    j["case"] = leonard::case_name(predicted);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "type: " << leonard::type_name(td.kind) << "\n";
  if (td.kind == leonard::TypeKind::I) {
    leonard::Scalar sum = td.q + td.q.inverse();
    std::string lin = (-sum).descend() ? (-sum).descend()->to_string() : (-sum).to_string();
    std::cout << "q: " << td.q << " (other root " << td.q.inverse() << ")\n";
    if (td.field().is_extension()) std::cout << "minimal polynomial: x^2 + (" << lin << ")*x + 1\n";
  }
  std::cout << "field: " << td.field().name() << "\n";
  for (const auto& [k, v] : td.entries())
    if (k != "q") std::cout << k << " = " << v << "\n";
  std::cout << "case: " << leonard::case_name(predicted) << "\n";
  return 0;
}

int cmd_generate(const Options& o) {
  Field f = o.field.empty() ? Field::rationals() : Field::parse(o.field);
  auto td = leonard::random_typedata(leonard::parse_type(o.type), o.d, f, o.seed);
  ParameterArray pa = leonard::generate(td);
  std::vector<std::string> comments = {"type " + leonard::type_name(td.kind) + " d=" + std::to_string(td.d) +
                                       " seed " + std::to_string(o.seed)};
  for (const auto& [k, v] : td.entries()) comments.push_back(k + " = " + v.to_string());
  std::cout << leonard::print_document(pa, comments);
  return 0;
}

int cmd_maps(const Options& o, bool swap) {
  ParameterArray pa = load_one(o, o.paths.at(0));
  if (require_valid(pa)) return 1;
  for (const auto& m : swap ? leonard::pair_swap_maps(pa) : leonard::pair_self_maps(pa))
    std::cout << m.to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leonard system parameter arrays with exact arithmetic"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--field", o.field, "Field to read entries in (Q, GF(p), GF(2^k), Q(sqrt(D)), GF(p)(sqrt(D)))");

  auto doc_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.paths, "Document path, or - for stdin")->required()->expected(1);
    return sub;
  };
  CLI::App* validate = doc_cmd("validate", "Check PA1-PA5");
  validate->add_flag("--json", o.json, "JSON report");
  CLI::App* classify = doc_cmd("classify", "Case, affine classes and pair maps");
  classify->add_flag("--json", o.json, "JSON report");
  classify->add_flag("--brute-force", o.brute_force, "Also compute the partition by solving all pairs");
  CLI::App* orbit = doc_cmd("orbit", "The eight relatives");
  CLI::App* affine = app.add_subcommand("affine-solve", "Affine map taking the first array to the second");
  affine->add_option("files", o.paths, "Source and target documents")->required()->expected(2);
  CLI::App* realize = doc_cmd("realize", "Split realization matrices");
  realize->add_flag("--certify", o.certify, "Run the idempotent, tridiagonal and trace checks");
  CLI::App* fit = doc_cmd("fit", "Type and closed-form scalars");
  fit->add_flag("--json", o.json, "JSON report");
  fit->add_option("--q", o.q, "Root q to fit with (type I)");
  CLI::App* self = doc_cmd("self-maps", "Affine maps fixing the Leonard pair");
  CLI::App* swap = doc_cmd("swap-maps", "Affine maps exchanging the Leonard pair");
  CLI::App* generate = app.add_subcommand("generate", "Random valid array of a given type");
  generate->add_option("--type", o.type, "I, II, III+, III-, IV")->required();
  generate->add_option("--d", o.d, "Diameter")->required();
  generate->add_option("--seed", o.seed, "Seed");
  for (CLI::App* sub : {validate, classify, orbit, affine, realize, fit, self, swap, generate})
    sub->add_option("--field", o.field, "Field to read entries in");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(o);
    if (*classify) return cmd_classify(o);
    if (*orbit) return cmd_orbit(o);
    if (*affine) return cmd_affine_solve(o);
    if (*realize) return cmd_realize(o);
    if (*fit) return cmd_fit(o);
    if (*self) return cmd_maps(o, false);
    if (*swap) return cmd_maps(o, true);
    if (*generate) return cmd_generate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
