// Command-line front end: classify structure matrices, test isomorphism,
// materialize family members, enumerate orbits, run the whole-space census,
// and run the self-check suites.
//
// Exit codes: 0 success (including negative isomorphism verdicts),
//             1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <iostream>

#include <alg2d/serialize.hpp>
#include <alg2d/verify.hpp>

namespace {

using namespace alg2d;

struct CommonOpts {
  std::string field;
  std::string msc;
  std::string msc2;
  std::string family;
  std::string params;
  std::string format = "json";
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t max_q = 0;  // 0 = per-operation default
};

const Field* field_from(const CommonOpts& o) {
  if (o.field.empty()) throw std::invalid_argument("--field is required here");
  return Field::parse(o.field);
}

MSC parse_msc_arg(const std::string& text, const CommonOpts& o) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad matrix JSON: ") + e.what());
  }
  const Field* fallback = o.field.empty() ? nullptr : Field::parse(o.field);
  return msc_from_json(j, fallback);
}

// Family names "A1".."A12"; the class comes from the field characteristic.
int parse_family(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'a')) {
    try {
      std::size_t used = 0;
      int fam = std::stoi(name.substr(1), &used);
      if (used == name.size() - 1 && fam >= 1 && fam <= 12) return fam;
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("family must be A1..A12, got: " + name);
}

// Parameters: split on ';' always; additionally on ',' for prime fields,
// where element strings themselves contain no commas.
std::vector<FieldElement> parse_params(const std::string& text, const Field* f) {
  std::vector<FieldElement> out;
  if (text.empty()) return out;
  char sep = text.find(';') != std::string::npos ? ';' : (f->k() == 1 ? ',' : ';');
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(sep, start);
    out.push_back(f->parse_element(text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// Space-separated rows (pipe between them), so extension-field coefficient
// lists, which contain commas themselves, stay unambiguous.
std::string table_msc(const MSC& m) {
  std::string s;
  for (std::size_t i = 0; i < 8; ++i) {
    if (i == 4) s += " | ";
    else if (i) s += ' ';
    s += m.e[i].to_string();
  }
  return s;
}

std::string table_label(const FamilyLabel& L) {
  if (L.cls == LabelClass::trivial) return "trivial";
  std::string s = std::string(to_string(L.cls)) + "/A" + std::to_string(L.family);
  if (!L.params.empty()) {
    s += "(";
    for (std::size_t i = 0; i < L.params.size(); ++i)
      s += (i ? ";" : "") + L.params[i].to_string();
    s += ")";
  }
  return s;
}

void emit(const json& j, const CommonOpts& o, const std::function<void()>& table_fn) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    table_fn();
}

int cmd_classify(const CommonOpts& o) {
  MSC A = parse_msc_arg(o.msc, o);
  ClassResult r = canonicalize(A);
  emit(to_json(r), o, [&] {
    std::cout << "field:     " << r.result_field->to_string() << "\n"
              << "label:     " << table_label(r.label) << "\n"
              << "witness:   [[" << r.witness.a.to_string() << " " << r.witness.b.to_string()
              << "] [" << r.witness.c.to_string() << " " << r.witness.d.to_string() << "]]\n"
              << "canonical: " << table_msc(r.canonical) << "\n";
  });
  return 0;
}

int cmd_isom(const CommonOpts& o) {
  MSC A = parse_msc_arg(o.msc, o);
  MSC B = parse_msc_arg(o.msc2, o);
  IsoResult r = is_isomorphic(A, B);
  emit(to_json(r), o, [&] {
    if (!r.isomorphic) {
      std::cout << "not isomorphic\n";
    } else {
      std::cout << "isomorphic over " << r.field->to_string() << " via [["
                << r.witness->a.to_string() << " " << r.witness->b.to_string() << "] ["
                << r.witness->c.to_string() << " " << r.witness->d.to_string() << "]]\n";
    }
  });
  return 0;
}

int cmd_materialize(const CommonOpts& o) {
  const Field* f = field_from(o);
  FamilyLabel L{class_for(f), parse_family(o.family), parse_params(o.params, f)};
  MSC m = materialize(L, f);
  emit(to_json(m), o, [&] { std::cout << table_msc(m) << "\n"; });
  return 0;
}

int cmd_orbit(const CommonOpts& o) {
  MSC A = parse_msc_arg(o.msc, o);
  OrbitReport r = o.max_q ? orbit(A, o.max_q) : orbit(A);
  emit(to_json(r), o, [&] {
    std::cout << "orbit size: " << r.size << "\n"
              << "subset:     " << r.subset.index << "\n"
              << "label:      " << table_label(r.label) << "\n";
  });
  return 0;
}

int cmd_census(const CommonOpts& o) {
  const Field* f = field_from(o);
  CensusTable t = o.max_q ? census(f, o.max_q) : census(f);
  if (o.format == "csv") {
    std::cout << to_csv(t);
    return 0;
  }
  emit(to_json(t), o, [&] {
    std::cout << "field " << f->to_string() << ": " << t.rows.size() << " orbits over "
              << t.total << " matrices\n";
    for (const auto& r : t.rows)
      std::cout << "  " << table_msc(r.representative) << "  size " << r.size << "  subset "
                << r.subset.index << "  " << table_label(r.label) << "\n";
    if (!t.shared_labels.empty()) {
      std::cout << "orbit groups sharing a label:";
      for (const auto& g : t.shared_labels) {
        std::cout << " {";
        for (std::size_t i = 0; i < g.size(); ++i) std::cout << (i ? "," : "") << g[i];
        std::cout << "}";
      }
      std::cout << "\n";
    }
  });
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  VerifyOptions opt;
  opt.seed = o.seed;
  auto results = run_verify(o.suite, opt, &std::cout);
  std::uint64_t failures = 0;
  for (const auto& r : results) failures += r.failures;
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical forms of two-dimensional algebras over finite fields"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_common = [&](CLI::App* sub, bool needs_msc, bool needs_msc2) {
    sub->add_option("--field", o.field, "field as p^k, e.g. 7^1 or 2^3");
    if (needs_msc)
      sub->add_option("--msc", o.msc, "2x4 structure matrix as JSON")->required();
    if (needs_msc2)
      sub->add_option("--msc2", o.msc2, "second structure matrix as JSON")->required();
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "table", "csv"}));
  };

  auto* classify = app.add_subcommand("classify", "canonical label, witness and form");
  add_common(classify, true, false);
  auto* isom = app.add_subcommand("isom", "isomorphism verdict with witness");
  add_common(isom, true, true);
  auto* mat = app.add_subcommand("materialize", "matrix of a labeled family member");
  add_common(mat, false, false);
  mat->add_option("--family", o.family, "family name A1..A12")->required();
  mat->add_option("--params", o.params,
                  "parameters; ';'-separated elements (',' also works in prime fields)");
  auto* orb = app.add_subcommand("orbit", "full basis-change orbit of a matrix");
  add_common(orb, true, false);
  orb->add_option("--max-q", o.max_q, "override the enumeration size bound");
  auto* cen = app.add_subcommand("census", "orbit decomposition of the whole space");
  add_common(cen, false, false);
  cen->add_option("--max-q", o.max_q, "override the full-census size bound");
  auto* ver = app.add_subcommand("verify", "run self-check suites");
  ver->add_option("--suite", o.suite, "eq21, action, idempotence, census, or all")
      ->check(CLI::IsMember({"eq21", "action", "idempotence", "census", "all"}));
  ver->add_option("--seed", o.seed, "seed for the randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits 0; bad usage exits 2
  }

  try {
    if (classify->parsed()) return cmd_classify(o);
    if (isom->parsed()) return cmd_isom(o);
    if (mat->parsed()) return cmd_materialize(o);
    if (orb->parsed()) return cmd_orbit(o);
    if (cen->parsed()) return cmd_census(o);
    if (ver->parsed()) return cmd_verify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const alg2d::cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
