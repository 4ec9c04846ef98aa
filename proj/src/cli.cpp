#include "ecpq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include "ecpq/arith.hpp"
#include "ecpq/curves.hpp"
#include "ecpq/diophantine.hpp"
#include "ecpq/error.hpp"
#include "ecpq/existence.hpp"
#include "ecpq/nonexistence.hpp"
#include "ecpq/quadforms.hpp"

namespace ecpq::cli {

namespace {

enum class Format { csv, json, table };

// Empty cells render as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, i64, double, bool, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

Cell cell(i128 v)
{
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return i64(v);
  return ecpq::to_string(v);
}

std::string text(const Cell& c)
{
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(i64 v) const { return std::to_string(v); }
    std::string operator()(double v) const
    {
      std::ostringstream s;
      s << std::setprecision(10) << v;
      return s.str();
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, c);
}

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

void render(const Table& t, Format format, std::ostream& out)
{
  switch (format) {
    case Format::csv: {
      for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(text(row[i]));
        out << '\n';
      }
      return;
    }
    case Format::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
          const auto& key = t.header[i];
          std::visit(
              [&](const auto& v) {
                using V = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<V, std::monostate>)
                  obj[key] = nullptr;
                else
                  obj[key] = v;
              },
              row[i]);
        }
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << '\n';
      return;
    }
    case Format::table: {
      std::vector<std::size_t> width(t.header.size());
      for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
      for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], text(row[i]).size());
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          out << (i ? "  " : "");
          if (i + 1 == cells.size())
            out << cells[i];
          else
            out << std::left << std::setw(int(width[i])) << cells[i];
        }
        out << '\n';
      };
      line(t.header);
      for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(text(c));
        line(cells);
      }
      return;
    }
  }
}

struct Common {
  std::string format_name = "csv";
  Format format = Format::csv;
  std::string output;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

void add_output_flags(CLI::App* sub, Common& common, bool with_workers)
{
  sub->add_option("--format", common.format_name, "Output format: csv, json or table")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  sub->add_option("--output", common.output, "Write results to PATH instead of standard output");
  if (with_workers) sub->add_option("--workers", common.workers, "Worker threads")->check(CLI::PositiveNumber);
}

void emit(const Table& t, const Common& common, std::ostream& out)
{
  if (common.output.empty()) {
    render(t, common.format, out);
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + common.output);
  render(t, common.format, file);
  if (!file) throw std::runtime_error("failed writing " + common.output);
}

Table table1_table(const std::vector<existence::ConductorRow>& rows)
{
  Table t{{"a", "b", "n", "delta", "N", "p", "q"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({r.a, r.b, r.n, r.delta, r.N, r.p, r.q == 1 ? Cell{} : Cell{r.q}});
  return t;
}

Table candidates_table(const std::vector<nonexistence::SemiprimeCandidate>& rows)
{
  Table t{{"N", "p", "q"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.N, r.p, r.q});
  return t;
}

std::vector<diophantine::EqTag> parse_eq_selection(const std::string& eq)
{
  if (eq == "all") return {diophantine::kAllEquations.begin(), diophantine::kAllEquations.end()};
  return {diophantine::parse_eq_tag(eq)};
}

std::string signs_text(diophantine::EqTag tag, const std::array<int, 2>& s)
{
  if (!diophantine::has_sign_choices(tag)) return "";
  return std::string(s[0] > 0 ? "+" : "-") + (s[1] > 0 ? "+" : "-");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Elliptic curves of prime and semiprime conductor: family searches, class-number "
               "nonexistence criterion, Diophantine obstructions."};
  app.name(args.empty() ? "ecpq" : args[0]);
  app.require_subcommand(1);
  app.allow_extras(false);

  Common common;
  i64 limit = 10'000'000, bound = 100, max_conductor = 999, prime_limit = 1'000'000;
  i64 a = 1, b = 1, n = 0, m = 0, p = 0, q = 0, A_max = 1'000'000;
  int a_max = 40, b_max = 40, e_max = -1;
  std::string eq = "all", verdicts_path;

  auto* table1 = app.add_subcommand("table1", "Family conductors N <= max-conductor that are prime or a product of two primes");
  table1->add_option("--bound", bound, "Search |a|, |b|, |n| < BOUND")->check(CLI::PositiveNumber)->capture_default_str();
  table1->add_option("--max-conductor", max_conductor, "Largest conductor reported")->check(CLI::PositiveNumber)->capture_default_str();
  add_output_flags(table1, common, true);

  auto* table2 = app.add_subcommand("table2", "Conductors N = pq < limit ruled out by the class-number criterion");
  table2->add_option("--limit", limit, "Exclusive bound on N")->check(CLI::PositiveNumber)->capture_default_str();
  table2->add_option("--verdicts", verdicts_path, "Also write per-candidate verdicts CSV to PATH");
  add_output_flags(table2, common, true);

  auto* candidates = app.add_subcommand("candidates", "N = pq < limit satisfying the nonexistence congruences");
  candidates->add_option("--limit", limit, "Exclusive bound on N")->check(CLI::PositiveNumber)->capture_default_str();
  add_output_flags(candidates, common, false);

  auto* classnum = app.add_subcommand("classnum", "Class number of Q(sqrt(m)) (narrow for m > 0)");
  classnum->add_option("-m,--m", m, "Squarefree radicand")->required();
  add_output_flags(classnum, common, false);

  auto* curve = app.add_subcommand("curve", "Invariants and reduction data of y^2 + y = x^3 + a x^2 + b x + n");
  curve->add_option("--a", a, "x^2 coefficient")->capture_default_str();
  curve->add_option("--b", b, "x coefficient")->capture_default_str();
  curve->add_option("--n", n, "Constant term")->capture_default_str();
  add_output_flags(curve, common, false);

  auto* dioph = app.add_subcommand("dioph", "Bounded solution search for the Diophantine equations E1..E7");
  dioph->add_option("--p", p, "Odd prime")->required();
  dioph->add_option("--q", q, "Odd prime")->required();
  dioph->add_option("--eq", eq, "Equation 1..7 or all")->capture_default_str();
  dioph->add_option("--a-max", a_max, "Largest exponent a")->check(CLI::PositiveNumber)->capture_default_str();
  dioph->add_option("--b-max", b_max, "Largest exponent b")->check(CLI::PositiveNumber)->capture_default_str();
  dioph->add_option("--A-max", A_max, "Largest |A|")->check(CLI::PositiveNumber)->capture_default_str();
  dioph->add_option("--e-max", e_max, "List the possible B values with exponents <= E-MAX instead")
      ->check(CLI::NonNegativeNumber);
  add_output_flags(dioph, common, false);

  auto* obstruct = app.add_subcommand("obstruct", "Residue obstruction certificates for (p, q) in both orders");
  obstruct->add_option("--p", p, "Odd prime")->required();
  obstruct->add_option("--q", q, "Odd prime")->required();
  obstruct->add_option("--eq", eq, "Equation 1..7 or all")->capture_default_str();
  add_output_flags(obstruct, common, false);

  auto* hl = app.add_subcommand("hl", "Prime-count constant C with p(x) ~ C sqrt(x) / log x for the family (a, b)");
  hl->add_option("--a", a, "Family parameter a")->capture_default_str();
  hl->add_option("--b", b, "Family parameter b")->capture_default_str();
  hl->add_option("--prime-limit", prime_limit, "Largest prime in the local-density product")
      ->check(CLI::Range(i64(3), std::numeric_limits<i64>::max()))
      ->capture_default_str();
  add_output_flags(hl, common, false);

  auto* almost = app.add_subcommand("almost-prime", "Count 1 <= n <= limit with |delta(n)| prime or semiprime");
  almost->add_option("--a", a, "Family parameter a")->capture_default_str();
  almost->add_option("--b", b, "Family parameter b")->capture_default_str();
  almost->add_option("--limit", limit, "T, the largest n")->check(CLI::NonNegativeNumber)->required();
  add_output_flags(almost, common, false);

  auto* setzer = app.add_subcommand("setzer-primes", "Primes u^2 + 64 up to limit");
  setzer->add_option("--limit", limit, "Largest value u^2 + 64")->check(CLI::NonNegativeNumber)->required();
  add_output_flags(setzer, common, false);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return 2;
  }

  common.format = common.format_name == "json" ? Format::json : common.format_name == "table" ? Format::table : Format::csv;

  try {
    Table t;
    if (table1->parsed()) {
      const existence::IntRange r{-(bound - 1), bound - 1};
      const auto rows = existence::search_conductors(r, r, r, max_conductor, common.workers);
      std::set<i64> distinct;
      for (const auto& row : rows) distinct.insert(row.N);
      err << "table1: " << rows.size() << " rows, " << distinct.size() << " distinct conductors\n";
      t = table1_table(rows);
    } else if (table2->parsed()) {
      const auto verdicts = nonexistence::nonexistence_search(limit, common.workers);
      const auto rows = nonexistence::nonexistent_conductors(verdicts);
      err << "table2: " << verdicts.size() << " congruence candidates, " << rows.size() << " ruled out\n";
      if (!verdicts_path.empty()) {
        std::ofstream file(verdicts_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open verdicts file " + verdicts_path);
        nonexistence::write_verdicts_csv(file, verdicts);
      }
      t = candidates_table(rows);
    } else if (candidates->parsed()) {
      t = candidates_table(nonexistence::congruence_candidates(limit));
    } else if (classnum->parsed()) {
      const auto data = quadforms::field_class_data(m);
      t = {{"m", "D", "h", "kind", "div3"}, {{data.m, data.D, data.h_value, std::string(m > 0 ? "narrow" : "class"), data.div3}}};
    } else if (curve->parsed()) {
      const curves::FamilyParams fp{a, b, n};
      const auto model = curves::family_model(fp);
      const auto inv = curves::invariants(model);
      const auto N = curves::family_conductor(fp);
      std::string factored, reductions;
      if (inv.delta != 0) {
        const auto fac = arith::factor(curves::family_discriminant(fp));
        for (const auto& f : fac.factors) {
          factored += (factored.empty() ? "" : "*") + std::to_string(f.prime) + (f.exponent > 1 ? "^" + std::to_string(f.exponent) : "");
          if (f.prime != 2)
            reductions += (reductions.empty() ? "" : ";") + std::to_string(f.prime) + ":" +
                          curves::to_string(curves::reduction_type(model, f.prime));
        }
      }
      t = {{"a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8", "c4", "c6", "delta", "delta_factored", "admissible",
            "conductor", "reduction"},
           {{model.a1, model.a2, model.a3, model.a4, model.a6, cell(inv.b2), cell(inv.b4), cell(inv.b6), cell(inv.b8),
             cell(inv.c4), cell(inv.c6), cell(inv.delta), factored, curves::family_admissible(a, b),
             N ? Cell{*N} : Cell{}, reductions}}};
    } else if (dioph->parsed()) {
      if (e_max >= 0) {
        t = {{"B"}, {}};
        for (i64 v : diophantine::possible_B_values(p, q, e_max)) t.rows.push_back({v});
      } else {
        t = {{"eq", "signs", "A", "a", "b"}, {}};
        u64 skipped = 0;
        for (auto tag : parse_eq_selection(eq)) {
          const auto res = diophantine::solve_equation({tag, std::nullopt}, p, q, {a_max, b_max, A_max});
          skipped += res.skipped_over_cap;
          for (const auto& s : res.solutions)
            t.rows.push_back({diophantine::to_string(tag), signs_text(tag, s.signs), s.A ? cell(*s.A) : Cell{}, i64(s.a),
                              i64(s.b)});
        }
        if (skipped > 0)
          err << "warning: " << skipped << " exponent pairs skipped because p^a q^b exceeds 2^90\n";
      }
    } else if (obstruct->parsed()) {
      t = {{"p", "q", "eq", "kind", "detail"}, {}};
      bool all = true;
      for (const auto& [x, y] : {std::pair{p, q}, std::pair{q, p}})
        for (auto tag : parse_eq_selection(eq)) {
          const auto ob = diophantine::residue_obstruction({tag, std::nullopt}, x, y);
          all = all && ob.has_value();
          t.rows.push_back({x, y, diophantine::to_string(tag), ob ? Cell{diophantine::to_string(ob->kind)} : Cell{},
                            ob ? Cell{ob->detail} : Cell{}});
        }
      err << "obstruct: two_torsion_obstructed=" << (diophantine::two_torsion_obstructed(p, q) ? "true" : "false")
          << ", certificates " << (all ? "complete" : "incomplete") << '\n';
    } else if (hl->parsed()) {
      const auto r = existence::hl_constant(a, b, prime_limit);
      const std::string note = "partial product over primes <= prime_cutoff; converges slowly and conditionally";
      t = {{"a", "b", "prime_cutoff", "C", "note"}, {{r.a, r.b, r.prime_cutoff, r.C, note}}};
    } else if (almost->parsed()) {
      const auto c = existence::almost_prime_count(a, b, limit);
      t = {{"a", "b", "T", "primes", "semiprimes"}, {{a, b, limit, c.primes, c.semiprimes}}};
    } else if (setzer->parsed()) {
      t = {{"u", "p"}, {}};
      for (const auto& h : existence::setzer_prime_search(limit)) t.rows.push_back({h.u, h.p});
    }
    emit(t, common, out);
    return 0;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ecpq::cli
