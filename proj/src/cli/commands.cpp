#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "bargmann/circulant.hpp"
#include "bargmann/cli.hpp"
#include "bargmann/equivalence.hpp"
#include "bargmann/estimation.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/invariants.hpp"
#include "bargmann/parallel.hpp"
#include "bargmann/twoqubit.hpp"

namespace bargmann::cli {

namespace {

struct Context {
  RunConfig config;
  std::ostream& out;
  std::ostream& err;

  bool csv() const { return config.format == "csv"; }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const Context& ctx, const Json& j) { ctx.out << j.dump(2) << '\n'; }

void json_only(const Context& ctx, const char* command) {
  if (ctx.csv()) throw Error(Errc::invalid_parameter, std::string("csv output is not available for ") + command);
}

Json invariant_json(Complex z) {
  return Json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}, {"arg", std::arg(z)}};
}

Json real_matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

StateTuple load(const Context& ctx, const std::string& path) { return load_document(path, ctx.config); }

const Matrix& single_two_qubit(const StateTuple& t, Matrix& storage) {
  if (t.size() != 1) {
    throw ValidationError("/states", "count", static_cast<double>(t.size()), "expected exactly one state");
  }
  if (t.dim() != 4) {
    throw ValidationError("/dim", "dimension", t.dim(), "expected a two-qubit state (dim 4)");
  }
  storage = t[0].density();
  return storage;
}

// --- subcommands -----------------------------------------------------------

struct InvariantCmd {
  std::string input;
  void run(const Context& ctx) const {
    const StateTuple t = load(ctx, input);
    const InvariantValue v = bargmann(t);
    if (ctx.csv()) {
      ctx.out << "re,im,abs,arg\n"
              << num(v.value.real()) << ',' << num(v.value.imag()) << ',' << num(std::abs(v.value)) << ','
              << num(std::arg(v.value)) << '\n';
      return;
    }
    Json j = invariant_json(v.value);
    j["order"] = v.order();
    emit(ctx, j);
  }
};

struct NProductCmd {
  std::string input;
  std::vector<long long> indices;
  void run(const Context& ctx) const {
    const StateTuple t = load(ctx, input);
    std::vector<std::size_t> word;
    for (long long i : indices) {
      if (i < 1 || static_cast<std::size_t>(i) > t.size()) {
        throw Error(Errc::invalid_index, "index " + std::to_string(i) + " outside 1.." + std::to_string(t.size()));
      }
      word.push_back(static_cast<std::size_t>(i - 1));
    }
    const InvariantValue v = n_product(t, word);
    if (ctx.csv()) {
      ctx.out << "re,im,abs,arg\n"
              << num(v.value.real()) << ',' << num(v.value.imag()) << ',' << num(std::abs(v.value)) << ','
              << num(std::arg(v.value)) << '\n';
      return;
    }
    Json j{{"indices", indices}};
    j.update(invariant_json(v.value));
    emit(ctx, j);
  }
};

struct BoundaryCmd {
  int n = 3;
  std::size_t points = 360;
  void run(const Context& ctx) const {
    const auto curve = boundary_curve(n, points);
    if (ctx.csv()) {
      ctx.out << "theta,r,x,y\n";
      for (const auto& s : curve) {
        ctx.out << num(s.theta) << ',' << num(s.radius) << ',' << num(s.radius * std::cos(s.theta)) << ','
                << num(s.radius * std::sin(s.theta)) << '\n';
      }
      return;
    }
    Json rows = Json::array();
    for (const auto& s : curve) {
      rows.push_back(Json{{"theta", s.theta},
                          {"r", s.radius},
                          {"x", s.radius * std::cos(s.theta)},
                          {"y", s.radius * std::sin(s.theta)},
                          {"t", s.t}});
    }
    emit(ctx, Json{{"n", n}, {"points", std::move(rows)}});
  }
};

struct MembershipCmd {
  int n = 3;
  double re = 0.0;
  double im = 0.0;
  std::string input;
  double tol = 1e-9;
  void run(const Context& ctx) const {
    int order = n;
    Complex z(re, im);
    if (!input.empty()) {
      const StateTuple t = load(ctx, input);
      order = static_cast<int>(t.size());
      z = bargmann(t).value;
    }
    const bool inside = region_contains({order, z}, tol);
    const double radius = boundary_radius(order, polar_angle(z));
    if (ctx.csv()) {
      ctx.out << "n,re,im,inside,boundary_r\n"
              << order << ',' << num(z.real()) << ',' << num(z.imag()) << ',' << (inside ? "true" : "false") << ','
              << num(radius) << '\n';
      return;
    }
    emit(ctx, Json{{"n", order}, {"z", complex_json(z)}, {"inside", inside}, {"boundary_r", radius}, {"tol", tol}});
  }
};

struct BoundsCmd {
  int n = 3;
  void run(const Context& ctx) const {
    const RegionBounds b = region_bounds(n);
    if (ctx.csv()) {
      ctx.out << "n,min_real,tau\n" << n << ',' << num(b.min_real) << ',' << num(b.tau) << '\n';
      return;
    }
    emit(ctx, Json{{"n", n}, {"min_real", b.min_real}, {"tau", b.tau}});
  }
};

struct ObgCmd {
  int n = 3;
  std::optional<double> t;
  std::optional<double> theta;
  void run(const Context& ctx) const {
    json_only(ctx, "obg");
    if (t.has_value() == theta.has_value()) throw Error(Errc::invalid_parameter, "give exactly one of --t and --theta");
    const double param = t ? *t : theta_to_t(n, *theta);
    const Complex z = obg_invariant(n, param);
    emit(ctx, Json{{"n", n},
                   {"t", param},
                   {"invariant", complex_json(z)},
                   {"r", std::abs(z)},
                   {"theta", polar_angle(z)},
                   {"tuple", tuple_document(obg_tuple(n, param))}});
  }
};

struct EnvelopeCmd {
  int n = 3;
  std::optional<double> theta;
  std::size_t points = 360;
  void run(const Context& ctx) const {
    std::vector<double> thetas;
    if (theta) {
      thetas.push_back(*theta);
    } else {
      for (std::size_t k = 0; k < points; ++k)
        thetas.push_back(std::numbers::pi * (2.0 * static_cast<double>(k) / static_cast<double>(points)));
    }
    if (ctx.csv()) ctx.out << "theta,r,t,F,dF_dt" << (n == 3 ? ",cubic" : "") << '\n';
    Json rows = Json::array();
    for (double th : thetas) {
      const EnvelopeContact c = locate_envelope_parameter(n, th);
      const double r = boundary_radius(n, th);
      if (ctx.csv()) {
        ctx.out << num(th) << ',' << num(r) << ',' << num(c.t) << ',' << num(c.residual.f) << ','
                << num(c.residual.df_dt);
        if (n == 3) ctx.out << ',' << num(cubic_boundary_residual(th, r));
        ctx.out << '\n';
        continue;
      }
      Json row{{"theta", th}, {"r", r}, {"t", c.t}, {"F", c.residual.f}, {"dF_dt", c.residual.df_dt}};
      if (n == 3) row["cubic"] = cubic_boundary_residual(th, r);
      rows.push_back(std::move(row));
    }
    if (!ctx.csv()) emit(ctx, Json{{"n", n}, {"points", std::move(rows)}});
  }
};

struct CirculantizeCmd {
  std::string input;
  void run(const Context& ctx) const {
    json_only(ctx, "circulantize");
    const StateTuple t = load(ctx, input);
    const Circulantization c = circulantize(t);
    emit(ctx, Json{{"invariant_before", complex_json(bargmann(t).value)},
                   {"invariant_after", complex_json(bargmann(c.realized).value)},
                   {"edge_overlap", complex_json(c.edge_overlap)},
                   {"phases", c.phases},
                   {"rank", c.rank},
                   {"gram", matrix_json(c.gram.matrix())},
                   {"tuple", tuple_document(c.realized)}});
  }
};

struct ChannelCmd {
  std::string input;
  std::size_t choi = 0;
  void run(const Context& ctx) const {
    json_only(ctx, "channel");
    if (input.empty() == (choi == 0)) throw Error(Errc::invalid_parameter, "give exactly one of --input and --choi");
    if (choi > 0) {
      const Matrix j = circulant_channel_choi(choi);
      const auto n = static_cast<int>(choi);
      emit(ctx, Json{{"n", choi},
                     {"trace", j.trace().real()},
                     {"min_eigenvalue", hermitian_eigenvalues(j).minCoeff()},
                     {"partial_transpose_min_eigenvalue",
                      hermitian_eigenvalues(partial_transpose(j, Subsystem::B, n, n)).minCoeff()}});
      return;
    }
    const StateTuple t = load(ctx, input);
    const Matrix g = gram_matrix(t).matrix();
    const Matrix projected = circulant_channel_apply(g);
    const CirculantSpec spec = circulant_spec_of(projected);
    const GramCheck check = is_circulant_gram(spec, 1e-9);
    Json eig = Json::array();
    for (Complex l : circulant_eigenvalues(spec)) eig.push_back(complex_json(l));
    emit(ctx, Json{{"gram", matrix_json(g)},
                   {"projected", matrix_json(projected)},
                   {"eigenvalues", std::move(eig)},
                   {"circulant_gram", check.ok},
                   {"reason", std::string(to_string(check.reason))}});
  }
};

struct EquivalenceCmd {
  std::string input;
  std::string other;
  std::string mode = "projective";
  std::size_t max_degree = 0;
  void run(const Context& ctx) const {
    json_only(ctx, "equivalence");
    const StateTuple a = load(ctx, input);
    const StateTuple b = load(ctx, other);
    const double tol = ctx.config.equality_tol;
    if (mode == "unitary") {
      const UnitaryEquivalence r = joint_unitary_equivalent(a, b, tol);
      Json j{{"mode", mode}, {"equivalent", r.equivalent}, {"gram_distance", r.gram_distance}};
      if (r.witness) j["witness"] = matrix_json(*r.witness);
      emit(ctx, j);
    } else if (mode == "projective") {
      emit(ctx, Json{{"mode", mode}, {"equivalent", joint_projective_equivalent(a, b, tol)}});
    } else {
      MixedOrbitOptions opt;
      opt.max_degree = max_degree;
      opt.tol = tol;
      const MixedOrbitResult r = mixed_orbit_equal(a, b, opt);
      Json j{{"mode", mode},
             {"equivalent", r.equal},
             {"degree", r.degree},
             {"words_compared", r.words_compared},
             {"max_deviation", r.max_deviation}};
      if (!r.equal) {
        Json w = Json::array();
        for (std::size_t i : r.first_mismatch) w.push_back(i + 1);
        j["first_mismatch"] = std::move(w);
      }
      emit(ctx, j);
    }
  }
};

struct ReconstructCmd {
  std::string input;
  void run(const Context& ctx) const {
    json_only(ctx, "reconstruct");
    const StateTuple t = load(ctx, input);
    if (!t.all_pure()) throw Error(Errc::not_pure_tuple, "reconstruction needs a pure tuple");
    InvariantOracle oracle = InvariantOracle::from_tuple(t);
    const Reconstruction r = reconstruct_tuple(oracle);
    const std::size_t n = t.size();
    emit(ctx, Json{{"oracle_calls", r.oracle_calls},
                   {"call_bound", (n - 1) * (n - 1)},
                   {"connected", r.connected},
                   {"projective_equivalent", joint_projective_equivalent(t, r.tuple, ctx.config.equality_tol)},
                   {"gram", matrix_json(r.gram.matrix())},
                   {"tuple", tuple_document(r.tuple)}});
  }
};

struct EstimateCmd {
  std::string input;
  double epsilon = 0.1;
  double delta = 0.05;
  std::size_t trials = 0;
  void run(const Context& ctx) const {
    json_only(ctx, "estimate");
    const StateTuple t = load(ctx, input);
    const Rng rng(ctx.config.seed);
    const EstimateResult r = estimate_bargmann(t, epsilon, delta, rng);
    Json j{{"seed", ctx.config.seed},
           {"epsilon", epsilon},
           {"delta", delta},
           {"shots_per_part", r.shots_per_part},
           {"estimate", complex_json(r.estimate)},
           {"mean_real", r.mean_real},
           {"mean_imag", r.mean_imag},
           {"exact", complex_json(bargmann(t).value)}};
    if (trials > 0) {
      const CoverageReport c = calibrate_coverage(t, epsilon, delta, trials, rng.split(2));
      j["calibration"] = Json{{"trials", c.trials},
                              {"real_fraction", c.real_fraction()},
                              {"imag_fraction", c.imag_fraction()},
                              {"both_fraction", c.both_fraction()}};
    }
    emit(ctx, j);
  }
};

struct PdfSampleCmd {
  int d = 2;
  std::size_t pairs = 100000;
  void run(const Context& ctx) const {
    const OverlapStatistics s = sample_overlap_statistics(d, pairs, Rng(ctx.config.seed));
    const double chi2 = chi_square_statistic(s.histogram, d);
    const boost::math::chi_squared dist(PolarHistogram::kRings * PolarHistogram::kSectors - 1);
    const double q99 = boost::math::quantile(dist, 0.99);
    if (ctx.csv()) {
      ctx.err << "seed " << ctx.config.seed << '\n';
      ctx.out << "ring,sector,count,expected\n";
      for (int b = 0; b < PolarHistogram::kRings * PolarHistogram::kSectors; ++b) {
        ctx.out << b / PolarHistogram::kSectors << ',' << b % PolarHistogram::kSectors << ','
                << s.histogram.counts[static_cast<std::size_t>(b)] << ','
                << num(static_cast<double>(pairs) * polar_bin_probability(d, b)) << '\n';
      }
      return;
    }
    Json counts = Json::array();
    for (auto c : s.histogram.counts) counts.push_back(c);
    emit(ctx, Json{{"seed", ctx.config.seed},
                   {"d", d},
                   {"pairs", pairs},
                   {"mean_abs2", s.mean_abs2},
                   {"expected_mean_abs2", 1.0 / d},
                   {"max_abs", s.max_abs},
                   {"chi_square", chi2},
                   {"chi_square_q99", q99},
                   {"histogram", std::move(counts)}});
  }
};

struct LuCmd {
  std::string input;
  std::string other;
  void run(const Context& ctx) const {
    Matrix rho;
    single_two_qubit(load(ctx, input), rho);
    const LuInvariants b = lu_invariants(rho);
    if (ctx.csv()) {
      ctx.out << "k,re,im\n";
      for (std::size_t k = 0; k < b.b.size(); ++k)
        ctx.out << k + 1 << ',' << num(b.b[k].real()) << ',' << num(b.b[k].imag()) << '\n';
      return;
    }
    Json values = Json::array();
    for (Complex z : b.b) values.push_back(complex_json(z));
    Json j{{"B", std::move(values)}};
    if (!other.empty()) {
      Matrix sigma;
      single_two_qubit(load(ctx, other), sigma);
      j["lu_similar"] = lu_similar(rho, sigma, ctx.config.equality_tol);
    }
    emit(ctx, j);
  }
};

struct EntanglementCmd {
  std::string input;
  void run(const Context& ctx) const {
    json_only(ctx, "entanglement");
    Matrix rho;
    single_two_qubit(load(ctx, input), rho);
    const EntanglementDecision d = entangled_by_invariants(rho, ctx.config.boundary_tol);
    const PptDecision p = ppt_oracle(rho, ctx.config.boundary_tol);
    emit(ctx, Json{{"lhs", d.lhs},
                   {"verdict", to_string(d.verdict)},
                   {"entangled", d.verdict == EntanglementVerdict::entangled},
                   {"det_gamma", p.det_gamma},
                   {"ppt_entangled", p.entangled}});
  }
};

struct ImaginarityCmd {
  std::string input;
  void run(const Context& ctx) const {
    json_only(ctx, "imaginarity");
    const StateTuple t = load(ctx, input);
    if (t.dim() != 2) throw Error(Errc::not_a_qubit, "imaginarity quadratic needs qubit states");
    const ImaginarityReport r = imaginarity_quadratic(t);
    Json j{{"invariant", complex_json(r.invariant)},
           {"p", r.from_second_order.p},
           {"q", r.from_second_order.q},
           {"residual", r.residual},
           {"recurrence", Json{{"p", r.from_recurrence.p}, {"q", r.from_recurrence.q}}},
           {"route_gap", r.route_gap},
           {"second_order", real_matrix_json(second_order_invariants(t))}};
    if (t.size() == 3 || t.size() == 4) {
      const Eigen::MatrixXd delta = second_order_invariants(t);
      const ClosedForm c = t.size() == 3 ? closed_form_order3(delta) : closed_form_order4(delta);
      j["closed_form"] = Json{{"a0", c.a0}, {"b0_squared", c.b0_squared}};
    }
    emit(ctx, j);
  }
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bargmann invariants of quantum state tuples", "bargmann"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", config.seed, "Random seed (BARGMANN_SEED overrides)");
  app.add_option("--threads", config.threads, "Worker threads, 0 for all")->check(CLI::NonNegativeNumber);
  app.add_option("--norm-tol", config.norm_tol, "Normalization, trace and Hermiticity tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--psd-floor", config.psd_floor, "Smallest accepted density eigenvalue, negated")
      ->check(CLI::PositiveNumber);
  app.add_option("--equality-tol", config.equality_tol, "Tolerance for invariant equality")
      ->check(CLI::PositiveNumber);
  app.add_option("--boundary-tol", config.boundary_tol, "Width of the indeterminate band of the entanglement test")
      ->check(CLI::PositiveNumber);

  std::vector<std::pair<CLI::App*, std::function<void(const Context&)>>> commands;
  auto add = [&](auto& cmd, const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, [&cmd](const Context& ctx) { cmd.run(ctx); });
    return sub;
  };

  InvariantCmd invariant;
  add(invariant, "invariant", "Invariant of a tuple")->add_option("--input", invariant.input)->required();

  NProductCmd nproduct;
  {
    auto* sub = add(nproduct, "nproduct", "Invariant of a re-indexed tuple (1-based indices)");
    sub->add_option("--input", nproduct.input)->required();
    sub->add_option("--indices", nproduct.indices)->required()->delimiter(',');
  }

  BoundaryCmd boundary;
  {
    auto* sub = add(boundary, "boundary", "Boundary curve of the attainable region");
    sub->add_option("--n", boundary.n)->required();
    sub->add_option("--points", boundary.points)->check(CLI::PositiveNumber);
  }

  MembershipCmd membership;
  {
    auto* sub = add(membership, "membership", "Is a point (or a tuple's invariant) attainable");
    sub->add_option("--n", membership.n);
    sub->add_option("--re", membership.re);
    sub->add_option("--im", membership.im);
    sub->add_option("--input", membership.input);
    sub->add_option("--tol", membership.tol)->check(CLI::PositiveNumber);
  }

  BoundsCmd bounds;
  add(bounds, "bounds", "Real and imaginary extent of the region")->add_option("--n", bounds.n)->required();

  ObgCmd obg;
  {
    auto* sub = add(obg, "obg", "Extremal qubit tuple on the boundary");
    sub->add_option("--n", obg.n)->required();
    sub->add_option("--t", obg.t);
    sub->add_option("--theta", obg.theta);
  }

  EnvelopeCmd envelope;
  {
    auto* sub = add(envelope, "envelope", "Envelope contact points for n = 3, 4");
    sub->add_option("--n", envelope.n)->required();
    sub->add_option("--theta", envelope.theta);
    sub->add_option("--points", envelope.points)->check(CLI::PositiveNumber);
  }

  CirculantizeCmd circ;
  add(circ, "circulantize", "Circulant tuple with the same invariant phase")
      ->add_option("--input", circ.input)
      ->required();

  ChannelCmd channel;
  {
    auto* sub = add(channel, "channel", "Circulant channel on a Gram matrix, or its Choi matrix");
    sub->add_option("--input", channel.input);
    sub->add_option("--choi", channel.choi);
  }

  EquivalenceCmd equivalence;
  {
    auto* sub = add(equivalence, "equivalence", "Compare two tuples");
    sub->add_option("--input", equivalence.input)->required();
    sub->add_option("--other", equivalence.other)->required();
    sub->add_option("--mode", equivalence.mode)->check(CLI::IsMember({"unitary", "projective", "mixed"}));
    sub->add_option("--max-degree", equivalence.max_degree);
  }

  ReconstructCmd reconstruct;
  add(reconstruct, "reconstruct", "Rebuild a tuple from its invariants")
      ->add_option("--input", reconstruct.input)
      ->required();

  EstimateCmd estimate;
  {
    auto* sub = add(estimate, "estimate", "Simulated cycle-test estimate");
    sub->add_option("--input", estimate.input)->required();
    sub->add_option("--epsilon", estimate.epsilon);
    sub->add_option("--delta", estimate.delta);
    sub->add_option("--trials", estimate.trials);
  }

  PdfSampleCmd pdf;
  {
    auto* sub = add(pdf, "pdf-sample", "Haar overlap statistics");
    sub->add_option("--d", pdf.d);
    sub->add_option("--pairs", pdf.pairs)->check(CLI::PositiveNumber);
  }

  LuCmd lu;
  {
    auto* sub = add(lu, "lu", "Local-unitary invariants of a two-qubit state");
    sub->add_option("--input", lu.input)->required();
    sub->add_option("--other", lu.other);
  }

  EntanglementCmd entanglement;
  add(entanglement, "entanglement", "Invariant entanglement test with PPT cross-check")
      ->add_option("--input", entanglement.input)
      ->required();

  ImaginarityCmd imaginarity;
  add(imaginarity, "imaginarity", "Quadratic fixing a qubit invariant up to conjugation")
      ->add_option("--input", imaginarity.input)
      ->required();

  std::vector<const char*> argv{"bargmann"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  if (const char* env = std::getenv("BARGMANN_SEED")) {
    try {
      std::size_t used = 0;
      config.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "error: BARGMANN_SEED is not an unsigned integer: " << env << '\n';
      return 2;
    }
  }
  parallel::set_threads(config.threads);

  Context ctx{config, out, err};
  try {
    for (auto& [sub, run] : commands) {
      if (sub->parsed()) {
        run(ctx);
        return 0;
      }
    }
  } catch (const ValidationError& e) {
    err << "validation error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.invariant()
        << " (magnitude " << e.magnitude() << "): " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 2;
}

}  // namespace bargmann::cli
