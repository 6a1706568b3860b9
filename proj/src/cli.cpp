#include "hfcone/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hfcone/gradings.hpp"
#include "hfcone/regions.hpp"

namespace hfcone::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<int> parse_policy(const std::string& value, const char* flag) {
  if (value == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(flag) + " expects 'auto' or a non-negative integer, got '" + value + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Source {
  std::string path;
  std::string builtin;

  std::string descriptor() const { return builtin.empty() ? path : "builtin:" + builtin; }

  KnotComplex load() const {
    if (path.empty() == builtin.empty()) throw UsageError("give exactly one of PATH or --builtin");
    if (!builtin.empty()) return builtin_by_name(builtin);
    return parse_complex(read_file(path));
  }
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("path", src.path, "Complex file (JSON)");
  cmd->add_option("--builtin", src.builtin, "unknot | t34 | staircase:a,b,... | borromean:G");
}

std::string piece_text(const Rational& bottom, int length) {
  return "[" + to_string(bottom) + ",len " + std::to_string(length) + "]";
}

json result_json(const SurgeryResult& r) {
  json towers = json::array();
  for (const auto& t : r.towers) towers.push_back(to_string(t));
  json reduced = json::array();
  for (const auto& p : r.reduced.pieces) reduced.push_back({{"bottom", to_string(p.bottom)}, {"length", *p.length}});
  json meta = {{"delta", r.delta_used}, {"width", r.width_used}};
  if (r.grading_modulus != 0) meta["grading_modulus"] = r.grading_modulus;
  return {{"n", r.n}, {"i", r.i}, {"towers", towers}, {"reduced", reduced}, {"meta", meta}};
}

SurgeryResult result_from_json(const json& j) {
  SurgeryResult r;
  r.n = j.at("n").get<int>();
  r.i = j.at("i").get<long long>();
  for (const auto& t : j.at("towers")) r.towers.push_back(parse_rational(t.get<std::string>()));
  for (const auto& p : j.at("reduced"))
    r.reduced.pieces.push_back({parse_rational(p.at("bottom").get<std::string>()), p.at("length").get<int>()});
  r.delta_used = j.at("meta").at("delta").get<int>();
  r.width_used = j.at("meta").at("width").get<int>();
  r.grading_modulus = j.at("meta").value("grading_modulus", 0);
  return r;
}

json param_value(const std::string& v) {
  if (v == "auto" || v == "all") return v;
  return std::stoll(v);
}

std::string param_text(const json& v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()); }

void dump_cone(const FiniteComplex& x, std::ostream& os) {
  os << "# basis: index block generator power grading | boundary\n";
  for (int k = 0; k < x.dim(); ++k) {
    const auto& l = x.labels[k];
    os << k << ' ' << x.block_names[l.block] << ' ' << l.generator << ' ' << l.power << ' ' << x.grading[k] << " |";
    for (int r : x.boundary.columns[k]) os << ' ' << r;
    os << '\n';
  }
}

struct SurgeryArgs {
  Source source;
  int n = 0;
  std::optional<long long> spinc;
  bool all_spinc = false;
  std::string delta = "auto";
  std::string width = "auto";
  std::string format = "text";
  bool dump = false;
};

SurgeryOptions options_of(const SurgeryArgs& a) {
  SurgeryOptions o;
  o.delta = parse_policy(a.delta, "--delta");
  o.width = parse_policy(a.width, "--width");
  if (o.width && *o.width < 1) throw UsageError("--width must be positive");
  return o;
}

Report surgery_report(const SurgeryArgs& a, const KnotComplex& c, const std::string& command) {
  const SurgeryOptions opts = options_of(a);
  Report rep;
  rep.input = a.source.descriptor();
  rep.command = command;
  rep.n = a.n;
  rep.delta = a.delta;
  rep.width = a.width;
  if (a.spinc && a.all_spinc) throw UsageError("--spinc and --all-spinc are exclusive");
  if (a.n == 0) {
    const long long i = a.spinc.value_or(0);
    if (a.all_spinc) throw UsageError("--all-spinc needs n != 0");
    rep.spinc = std::to_string(i);
    rep.results.push_back(zero_surgery_homology(c, i, opts));
  } else if (a.spinc) {
    rep.spinc = std::to_string(residue(*a.spinc, a.n));
    rep.results.push_back(surgery_homology(c, a.n, *a.spinc, opts));
  } else {
    rep.spinc = "all";
    rep.results = surgery_homology_all(c, a.n, opts);
  }
  return rep;
}

int cmd_validate(const Source& src, std::ostream& out) {
  const KnotComplex c = src.load();
  const int delta = 2 * c.max_abs_alexander() + 2;
  if (!check_flip_quasi_iso(c, delta)) throw ValidationError("flip does not induce an isomorphism on homology");
  out << "valid: " << c.name() << " (" << c.size() << " generators)\n";
  return kOk;
}

int cmd_surgery(const SurgeryArgs& a, std::ostream& out, std::ostream& err) {
  const KnotComplex c = a.source.load();
  const Report rep = surgery_report(a, c, "surgery");
  if (a.dump) {
    std::ostream& os = a.format == "json" ? err : out;
    for (const auto& r : rep.results) {
      os << "# cone n=" << r.n << " i=" << r.i << " delta=" << r.delta_used << " width=" << r.width_used << '\n';
      if (r.n == 0)
        dump_cone(zero_surgery_cone(c, r.i, r.delta_used), os);
      else
        dump_cone(build_cone(c, r.n, static_cast<int>(r.i), r.delta_used, r.width_used).complex, os);
    }
  }
  if (a.format == "json") {
    out << to_json(rep).dump(2) << '\n';
    return kOk;
  }
  out << rep.input << ", n = " << rep.n << '\n';
  for (const auto& r : rep.results) {
    out << "i=" << r.i << ": " << describe(r) << "  (delta " << r.delta_used << ", width " << r.width_used << ")";
    if (r.n == 0) out << (r.grading_modulus ? "  [relative, mod " + std::to_string(r.grading_modulus) + "]" : "  [relative]");
    out << '\n';
  }
  return kOk;
}

int cmd_dinv(const SurgeryArgs& a, std::ostream& out) {
  if (a.n == 0) throw UsageError("dinv needs n != 0");
  const KnotComplex c = a.source.load();
  SurgeryArgs all = a;
  all.spinc.reset();
  all.all_spinc = true;
  const Report rep = surgery_report(all, c, "dinv");
  if (a.format == "json") {
    out << to_json(rep).dump(2) << '\n';
    return kOk;
  }
  std::string line;
  for (const auto& r : rep.results) {
    if (!line.empty()) line += ", ";
    line += std::to_string(r.i) + ":";
    for (const auto& t : r.towers) line += " " + to_string(t);
  }
  out << line << '\n';
  return kOk;
}

int cmd_cobordism(const SurgeryArgs& a, int s, std::ostream& out) {
  if (a.n == 0) throw UsageError("cobordism needs n != 0");
  const KnotComplex c = a.source.load();
  const CobordismMap m = cobordism_map(c, a.n, s, options_of(a));
  json blocks = json::array();
  for (const auto& [d, block] : m.map.blocks) {
    if (block.cols() == 0 || block.rows() == 0) continue;
    json rows = json::array();
    for (int r = 0; r < block.rows(); ++r) {
      std::string row;
      for (int k = 0; k < block.cols(); ++k) row += block.get(r, k) ? '1' : '0';
      rows.push_back(row);
    }
    blocks.push_back({{"source_degree", d}, {"target_degree", d + m.map.degree}, {"rows", rows}});
  }
  if (a.format == "json") {
    json doc = {{"input", a.source.descriptor()},
                {"command", "cobordism"},
                {"params", {{"n", a.n}, {"s", s}, {"delta", m.delta}, {"width", m.width}}},
                {"map", {{"i", m.i}, {"degree", to_string(m.degree)}, {"rank", m.map.rank()}, {"blocks", blocks}}},
                {"version", kVersion}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  out << "cobordism n=" << m.n << " s=" << m.s << " (class " << m.i << "): degree " << to_string(m.degree)
      << ", rank " << m.map.rank() << "  (delta " << m.delta << ", width " << m.width << ")\n";
  for (const auto& b : blocks) {
    out << "  cone degree " << b["target_degree"].get<int>() << " <- B degree " << b["source_degree"].get<int>() << ":";
    for (const auto& row : b["rows"]) out << ' ' << row.get<std::string>();
    out << '\n';
  }
  return kOk;
}

}  // namespace

json to_json(const Report& r) {
  json results = json::array();
  for (const auto& res : r.results) results.push_back(result_json(res));
  return {{"input", r.input},
          {"command", r.command},
          {"params",
           {{"n", r.n}, {"spinc", param_value(r.spinc)}, {"delta", param_value(r.delta)}, {"width", param_value(r.width)}}},
          {"results", results},
          {"version", r.version}};
}

Report report_from_json(const json& doc) {
  Report r;
  r.input = doc.at("input").get<std::string>();
  r.command = doc.at("command").get<std::string>();
  const json& p = doc.at("params");
  r.n = p.at("n").get<int>();
  r.spinc = param_text(p.at("spinc"));
  r.delta = param_text(p.at("delta"));
  r.width = param_text(p.at("width"));
  for (const auto& res : doc.at("results")) r.results.push_back(result_from_json(res));
  r.version = doc.at("version").get<std::string>();
  return r;
}

std::string describe(const SurgeryResult& r) {
  std::string text;
  if (r.towers.empty()) {
    text = "no towers";
  } else if (r.towers.size() == 1) {
    text = "tower bottom " + to_string(r.towers.front());
  } else {
    text = "towers";
    for (std::size_t k = 0; k < r.towers.size(); ++k) text += (k ? ", " : " ") + to_string(r.towers[k]);
  }
  text += "; reduced: ";
  if (r.reduced.pieces.empty()) return text + "0";
  std::vector<std::pair<Piece, int>> groups;
  for (const auto& p : r.reduced.pieces) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.push_back({p, 1});
  }
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (k) text += ", ";
    text += std::to_string(groups[k].second) + "×" + piece_text(groups[k].first.bottom, *groups[k].first.length);
  }
  return text;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heegaard Floer homology of integer surgeries from a knot Floer complex", "hfcone"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Source validate_src;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a complex file");
  validate_cmd->add_option("path", validate_src.path, "Complex file (JSON)")->required();

  SurgeryArgs sa;
  CLI::App* surgery_cmd = app.add_subcommand("surgery", "HF+ of n-surgery per spin^c class");
  add_source(surgery_cmd, sa.source);
  surgery_cmd->add_option("--n", sa.n, "Surgery coefficient")->required();
  auto* spinc_opt = surgery_cmd->add_option("--spinc", sa.spinc, "Spin^c class (residue or integer)");
  auto* all_opt = surgery_cmd->add_flag("--all-spinc", sa.all_spinc, "All classes (default for n != 0)");
  spinc_opt->excludes(all_opt);
  surgery_cmd->add_option("--delta", sa.delta, "auto | K")->capture_default_str();
  surgery_cmd->add_option("--width", sa.width, "auto | B")->capture_default_str();
  surgery_cmd->add_option("--format", sa.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  surgery_cmd->add_flag("--dump", sa.dump, "Print the truncated cone");

  SurgeryArgs da;
  CLI::App* dinv_cmd = app.add_subcommand("dinv", "d-invariants of n-surgery");
  add_source(dinv_cmd, da.source);
  dinv_cmd->add_option("--n", da.n, "Surgery coefficient")->required();
  dinv_cmd->add_option("--delta", da.delta, "auto | K");
  dinv_cmd->add_option("--width", da.width, "auto | B");
  dinv_cmd->add_option("--format", da.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  SurgeryArgs ca;
  int s = 0;
  CLI::App* cob_cmd = app.add_subcommand("cobordism", "Two-handle cobordism map from B_s");
  add_source(cob_cmd, ca.source);
  cob_cmd->add_option("--n", ca.n, "Surgery coefficient")->required();
  cob_cmd->add_option("--s", s, "Alexander index of the B summand")->required();
  cob_cmd->add_option("--delta", ca.delta, "auto | K");
  cob_cmd->add_option("--width", ca.width, "auto | B");
  cob_cmd->add_option("--format", ca.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_src, out);
    if (surgery_cmd->parsed()) return cmd_surgery(sa, out, err);
    if (dinv_cmd->parsed()) return cmd_dinv(da, out);
    if (cob_cmd->parsed()) return cmd_cobordism(ca, s, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const WindowError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return kValidation;
  } catch (const StabilizationError& e) {
    err << "computation failed: " << e.what() << '\n';
    return kComputation;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << '\n';
    return kComputation;
  }
  return kUsage;
}

}  // namespace hfcone::cli
