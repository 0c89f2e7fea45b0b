// unitri: command-line front end for the unitriangular-group library.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "unitri/unitri.hpp"

using namespace unitri;

namespace {

/// Malformed user input; exits with status 2.
struct InputError : Error {
  using Error::Error;
};

struct Globals {
  std::uint64_t p = 3;
  int f = 1;
  int k = 1;
  int window = 6;
  int N = 20;
  std::uint64_t cap = default_closure_cap;
  std::string format = "text";
  std::string out;
};

template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

RingPtr field_of(const Globals& g) {
  return parsing([&] { return g.f == 1 ? Ring::prime_field(g.p) : Ring::ext_field(g.p, g.f); });
}

std::string matrix_text(const UniTriWindow& x) {
  std::ostringstream os;
  const Ring& R = *x.ring();
  for (int i = 1; i <= x.n(); ++i) {
    for (int j = 1; j <= x.n(); ++j) {
      if (j > 1) os << ' ';
      os << (j < i ? "0" : j == i ? "1" : R.to_string(x.get(i, j)));
    }
    os << '\n';
  }
  return os.str();
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string read_input(const std::string& text) {
  if (text.empty() || text.front() != '@') return text;
  std::ifstream in(text.substr(1));
  if (!in) throw InputError("cannot read " + text.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

std::string run_dim(const Globals& g, const std::string& alpha_text, const std::string& partition_text) {
  std::optional<AlphaTarget> alpha;
  std::optional<Partition> mu;
  if (!partition_text.empty()) {
    mu = parsing([&] { return parse_partition(partition_text); });
  } else {
    if (alpha_text.empty()) throw InputError("dim needs --alpha or --partition");
    alpha = parsing([&] { return AlphaTarget::parse(alpha_text); });
    mu = partition_for_alpha(*alpha, g.N);
  }
  const DimSequence s = dim_sequence_partition(*mu, g.N);
  if (g.format == "csv") return to_csv(s);
  if (g.format == "json") {
    json j = {{"partition", partition_to_json(*mu)}, {"N", g.N}, {"count", count_upto(*mu, g.N)},
              {"sequence", sequence_to_json(s)}};
    if (alpha) j["alpha"] = alpha->to_string();
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (alpha) os << "alpha      " << alpha->to_string() << '\n';
  os << "partition  " << to_string(*mu) << '\n';
  os << "parts      " << join(mu->with_window(std::max(g.N, mu->window())).parts()) << '\n';
  os << "|mu|_" << g.N << "    " << count_upto(*mu, g.N) << '\n';
  os << "a_" << g.N << "       " << s.terms.back().str() << " = " << to_decimal(s.terms.back(), 12) << '\n';
  if (s.limit_estimate) os << "limit est. " << to_decimal(*s.limit_estimate, 12) << '\n';
  return os.str();
}

std::string run_normalize(const Globals& g, const std::string& alpha_text, const std::string& partition_text) {
  std::optional<Partition> mu;
  if (!partition_text.empty())
    mu = parsing([&] { return parse_partition(partition_text); });
  else if (!alpha_text.empty())
    mu = partition_for_alpha(parsing([&] { return AlphaTarget::parse(alpha_text); }), g.N);
  else
    throw InputError("normalize needs --partition or --alpha");
  const Partition nu = monotone_normalize(*mu);
  const bool normal = is_normal(nu);
  if (g.format == "json")
    return json{{"input", partition_to_json(*mu)}, {"normalized", partition_to_json(nu)}, {"is_normal", normal}}.dump(2) +
           "\n";
  return "input       " + to_string(*mu) + "\nnormalized  " + to_string(nu) + "\nis_normal   " +
         (normal ? "true" : "false") + "\n";
}

std::string run_nottingham(const Globals& g, const std::string& series_text, int r, const std::string& coeff,
                           bool invert_it) {
  std::optional<SeriesAut> u;
  if (!series_text.empty()) {
    u = parsing([&] { return series_from_json(json::parse(read_input(series_text))); });
  } else {
    if (r < 1) throw InputError("nottingham needs a series or --generator r");
    const RingPtr R = field_of(g);
    const Coeff a = parsing([&] { return R->parse(coeff); });
    u = generator(r, a, R, g.window);
  }
  if (u->degree() < g.window) *u = u->with_degree(g.window);
  if (invert_it) *u = invert(*u);
  const UniTriWindow x = sigma(*u, g.window);
  const bool member = first_row_membership(x);
  if (g.format == "json")
    return json{{"series", series_to_json(*u)}, {"sigma", matrix_to_json(x)}, {"first_row_membership", member}}.dump(2) +
           "\n";
  std::ostringstream os;
  os << "coeffs a_2..a_N:";
  for (Coeff c : u->coeffs()) os << ' ' << u->ring()->to_string(c);
  os << "\nsigma at window " << g.window << ":\n" << matrix_text(x);
  os << "first-row membership " << (member ? "true" : "false") << '\n';
  return os.str();
}

std::string run_word(const Globals& g, const std::string& word_text) {
  const Word w = parsing([&] { return parse_word(word_text, g.p); });
  const RingPtr R = parsing([&] { return Ring::prime_field(g.p); });
  const UniTriWindow x = phi(w, R, g.window);
  json j = {{"word", to_string(w)}, {"matrix", matrix_to_json(x)}, {"periodic", is_periodic(x, 2)}};
  std::string reading;
  try {
    const auto rl = read_length(x);
    j["read_length"] = {{"l", rl.length}, {"case", to_string(rl.which)}};
    reading = std::to_string(rl.length) + ", case " + to_string(rl.which);
  } catch (const Error& e) {
    j["read_length"] = {{"error", e.what()}};
    reading = e.what();
  }
  if (g.format == "json") return j.dump(2) + "\n";
  return "word         " + to_string(w) + "\n" + matrix_text(x) + "read_length  " + reading + "\n";
}

std::string run_centralizer(const Globals& g, const std::string& matrices,
                            bool alpha_image) {
  std::vector<UniTriWindow> gens;
  RingPtr R;
  if (alpha_image) {
    if (g.f < 2) throw InputError("--alpha-image needs --f >= 2");
    EmbeddingContext ctx(field_of(g));
    if (g.window % g.f) throw InputError("window must be a multiple of f");
    R = ctx.fp();
    for (const auto& x : standard_generators(ctx.fq(), g.window / g.f)) gens.push_back(ctx.alpha(x));
  } else if (!matrices.empty()) {
    const json arr = parsing([&] { return json::parse(read_input(matrices)); });
    for (const auto& m : arr) gens.push_back(parsing([&] { return matrix_from_json(m); }));
    if (gens.empty()) throw InputError("no matrices given");
    R = gens.front().ring();
  } else {
    throw InputError("centralizer needs --alpha-image, --squares or --matrices");
  }
  const int n = gens.front().n();
  const auto c = centralizer_solve(gens, R, n);
  bool commute = true;
  for (const auto& b : c.basis)
    for (const auto& y : gens) commute = commute && b * y == y * b;
  const auto support = centralizer_support(c, n);
  json sq = json::array();
  for (const auto& s : support) sq.push_back({s.r, s.c});
  if (g.format == "json")
    return json{{"ring", ring_to_json(*R)}, {"n", n}, {"log_order", c.log_order}, {"unit_support", sq},
                {"commutes", commute}}
               .dump(2) +
           "\n";
  std::ostringstream os;
  os << "ring        " << R->describe() << "\nwindow      " << n << "\nlog_q order " << c.log_order << '\n';
  os << "support     ";
  if (support.empty() && c.log_order > 0) os << "(not spanned by unit matrices)";
  for (const auto& s : support) os << '(' << s.r << ',' << s.c << ") ";
  os << "\ncommutes    " << pass(commute) << '\n';
  return os.str();
}

std::string run_centralizer_squares(const Globals& g, const std::vector<std::pair<int, int>>& squares) {
  const RingPtr R = field_of(g);
  std::vector<Square> sq;
  for (auto [r, c] : squares) sq.push_back({r, c});
  const PartitionDiagram mu = parsing([&] { return PartitionDiagram::closure(g.window, sq); });
  const auto c = centralizer_solve(materialize(mu, R, g.window), R, g.window);
  auto perp = orthogonal(mu).diagram.squares();
  std::sort(perp.begin(), perp.end());
  const auto support = centralizer_support(c, g.window);
  json js = json::array();
  for (const auto& s : support) js.push_back({s.r, s.c});
  const bool matches = support == perp && static_cast<int>(perp.size()) == c.log_order;
  if (g.format == "json")
    return json{{"n", g.window}, {"log_order", c.log_order}, {"unit_support", js}, {"matches_orthogonal", matches}}.dump(2) +
           "\n";
  std::ostringstream os;
  os << "window      " << g.window << "\nlog_q order " << c.log_order << "\nsupport     ";
  for (const auto& s : support) os << '(' << s.r << ',' << s.c << ") ";
  os << "\northogonal  " << pass(matches) << '\n';
  return os.str();
}

std::string run_autos(const Globals& g) {
  const RingPtr R = field_of(g);
  const int n = g.window;
  if (n < 4) throw InputError("autos-verify needs --window >= 4");
  std::vector<AutDescriptor> autos{AutDescriptor::tau(), AutDescriptor::field(1)};
  std::vector<Coeff> d;
  for (int i = 0; i < n; ++i) d.push_back(1 + static_cast<Coeff>(i) % (R->order() - 1));
  autos.push_back(AutDescriptor::diagonal(d));
  std::mt19937_64 rng(20240601);
  autos.push_back(AutDescriptor::inner(random_element(R, n, rng)));
  for (int r = 2; r <= n - 2; ++r) autos.push_back(AutDescriptor::central_scalar(r, *R, 1));
  autos.push_back(AutDescriptor::extremal(1, Side::left));
  autos.push_back(AutDescriptor::extremal(1, Side::right));
  json checks = json::array();
  std::ostringstream os;
  os << "G_" << n << "(" << R->order() << ")\n";
  for (const auto& a : autos) {
    const auto rep = verify_automorphism(a, R, n, 200, 7);
    std::string name = kind_name(a.kind);
    if (a.kind == AutDescriptor::Kind::central) name += " r=" + std::to_string(a.r);
    if (a.kind == AutDescriptor::Kind::extremal) name += a.side == Side::left ? " left" : " right";
    checks.push_back({{"map", name},
                      {"pass", rep.ok()},
                      {"failures", rep.hom.failures},
                      {"rank", rep.hom.superdiagonal_rank},
                      {"mismatches", rep.mismatches}});
    os << pass(rep.ok()) << "  " << name << "  (failures " << rep.hom.failures << ", rank " << rep.hom.superdiagonal_rank
       << "/" << rep.hom.full_rank << ")\n";
  }
  const int logp = central_extremal_log_order(R, n);
  os << "central+extremal group: p^" << logp << '\n';
  if (g.format == "json")
    return json{{"ring", ring_to_json(*R)}, {"n", n}, {"checks", checks}, {"central_extremal_log_p", logp}}.dump(2) + "\n";
  return os.str();
}

std::string run_padic(const Globals& g, const std::string& alpha_text, const std::string& partition_text) {
  std::optional<Partition> mu;
  if (!partition_text.empty())
    mu = parsing([&] { return parse_partition(partition_text); });
  else if (!alpha_text.empty())
    mu = partition_for_alpha(parsing([&] { return AlphaTarget::parse(alpha_text); }), g.N);
  else
    throw InputError("padic needs --partition or --alpha");
  parsing([&] { return Ring::trunc_int(g.p, 1); });
  const auto s = dim_sequence_padic(*mu, g.k, g.N, g.p, std::min<std::uint64_t>(g.cap, 20'000));
  if (g.format == "json") {
    json terms = json::array();
    for (std::size_t i = 0; i < s.seq.terms.size(); ++i) {
      json t = rational_to_json(s.seq.terms[i]);
      t["n"] = i + 2;
      t["log_order"] = s.seq.counts[i].str();
      t["verified"] = static_cast<bool>(s.verified[i]);
      terms.push_back(t);
    }
    return json{{"partition", partition_to_json(*mu)}, {"k", g.k}, {"p", g.p}, {"terms", terms},
                {"zero_dimension_discrepancy", s.zero_dimension_discrepancy}, {"note", s.note}}
               .dump(2) +
           "\n";
  }
  std::ostringstream os;
  os << "n,log_order,a_n_num,a_n_den,decimal,verified\n";
  for (std::size_t i = 0; i < s.seq.terms.size(); ++i)
    os << i + 2 << ',' << s.seq.counts[i] << ',' << numerator(s.seq.terms[i]) << ',' << denominator(s.seq.terms[i])
       << ',' << to_decimal(s.seq.terms[i], 12) << ',' << (s.verified[i] ? "closure" : "formula") << '\n';
  if (s.zero_dimension_discrepancy) os << "# discrepancy: " << s.note << '\n';
  return os.str();
}

std::string run_fieldext(const Globals& g) {
  if (g.f < 2) throw InputError("fieldext needs --f >= 2");
  const RingPtr R = field_of(g);
  std::ostringstream os;
  json rows = json::array();
  if (g.format != "json") os << "n,log_order,lower,upper,a_n_num,a_n_den,decimal\n";
  for (int n = 2; n <= g.N; ++n) {
    const auto t = alpha_image_term(*R, n);
    rows.push_back({{"n", n}, {"log_order", t.log_order}, {"lower", t.lower}, {"upper", t.upper},
                    {"a_n", rational_to_json(t.a_n)}});
    os << n << ',' << t.log_order << ',' << t.lower << ',' << t.upper << ',' << numerator(t.a_n) << ','
       << denominator(t.a_n) << ',' << to_decimal(t.a_n, 12) << '\n';
  }
  const int idx = block_index_log(*R);
  if (g.format == "json")
    return json{{"ring", ring_to_json(*R)}, {"rows", rows}, {"block_index_log_p", idx}}.dump(2) + "\n";
  os << "# block index p^" << idx << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in finite truncations of the unitriangular pro-p group"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--p", g.p, "prime")->check(CLI::PositiveNumber);
  app.add_option("--f", g.f, "extension degree")->check(CLI::Range(1, 8));
  app.add_option("--k", g.k, "p-adic exponent")->check(CLI::NonNegativeNumber);
  app.add_option("--window", g.window, "matrix window n")->check(CLI::Range(1, 4096));
  app.add_option("--N", g.N, "last index of a sequence")->check(CLI::Range(2, 10'000'000));
  app.add_option("--cap", g.cap, "closure cap")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", g.out, "write the report to FILE");

  std::string alpha, partition, series, coeff = "1", word, matrices;
  int gen_r = 0;
  bool inv = false, alpha_image = false;
  std::vector<std::pair<int, int>> squares;

  auto* dim = app.add_subcommand("dim", "partition and dimension sequence for alpha");
  dim->add_option("--alpha", alpha, "p/q, decimal, or const:pi-inv / const:e-3");
  dim->add_option("--partition", partition, "partition text, e.g. \"(0^2,1|tail=affine:1)\"");
  auto* norm = app.add_subcommand("normalize", "monotone normalization of a partition");
  norm->add_option("--partition", partition);
  norm->add_option("--alpha", alpha);
  auto* nott = app.add_subcommand("nottingham", "sigma image of a series automorphism");
  nott->add_option("series", series, "series JSON, or @FILE");
  nott->add_option("--generator", gen_r, "use e_r[coeff]");
  nott->add_option("--coeff", coeff, "coefficient of the generator");
  nott->add_flag("--invert", inv, "invert the series first");
  auto* wordc = app.add_subcommand("word", "image of a word in C_p * C_p");
  wordc->add_option("word", word, "e.g. \"x^2 y x y^2\"")->required();
  auto* cent = app.add_subcommand("centralizer", "centralizer by linear solve");
  cent->add_flag("--alpha-image", alpha_image, "centralize alpha_f of G_{n/f}(q) in G_n(p)");
  cent->add_option("--squares", squares, "centralize P_mu for the closure of these squares, e.g. 3 4");
  cent->add_option("--matrices", matrices, "JSON array of matrices, or @FILE");
  auto* autos = app.add_subcommand("autos-verify", "verify the generating automorphisms");
  auto* padic = app.add_subcommand("padic", "dimension sequence of P_mu(p^k Z_p)");
  padic->add_option("--alpha", alpha);
  padic->add_option("--partition", partition);
  auto* fext = app.add_subcommand("fieldext", "alpha_f image orders and sandwich bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string report;
    if (*dim) report = run_dim(g, alpha, partition);
    if (*norm) report = run_normalize(g, alpha, partition);
    if (*nott) report = run_nottingham(g, series, gen_r, coeff, inv);
    if (*wordc) report = run_word(g, word);
    if (*cent)
      report = squares.empty() ? run_centralizer(g, matrices, alpha_image) : run_centralizer_squares(g, squares);
    if (*autos) report = run_autos(g);
    if (*padic) report = run_padic(g, alpha, partition);
    if (*fext) report = run_fieldext(g);
    if (g.out.empty()) {
      std::cout << report;
    } else {
      std::ofstream out(g.out);
      if (!out) throw Error("cannot write " + g.out);
      out << report;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
