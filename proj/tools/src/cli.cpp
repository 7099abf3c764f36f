#include "hyperdyn/tools/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "hyperdyn/errors.hpp"
#include "hyperdyn/horseshoe.hpp"
#include "hyperdyn/manifolds.hpp"
#include "hyperdyn/symbolic.hpp"
#include "hyperdyn/toral.hpp"
#include "hyperdyn/tools/errors.hpp"
#include "hyperdyn/tools/pgm.hpp"
#include "hyperdyn/ultralimit.hpp"

namespace hyperdyn::tools {

namespace {

using nlohmann::json;

struct Result {
  std::string text;
  json data;
  std::string csv;  // empty when the command has no tabular form
  std::optional<GrayImage> image;
};

using Action = std::function<Result()>;

// A failed nested `run`; carries the inner exit code.
struct NestedExit {
  int code;
  std::string message;
};

std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

std::string big(const BigInt& v) { return v.str(); }

Result json_result(json data) {
  Result r;
  r.text = data.dump(2);
  r.data = std::move(data);
  return r;
}

Result scalar_result(std::string text, json data) {
  Result r;
  r.text = std::move(text);
  r.data = std::move(data);
  return r;
}

Result table_result(std::string csv, json data) {
  Result r;
  r.text = csv;
  r.csv = std::move(csv);
  r.data = std::move(data);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
    body(f);
    f.flush();
    if (!f) throw UsageError("write to '" + path.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

SFT load_sft(const std::string& source) {
  if (source == "adler-weiss") return adler_weiss_matrix();
  if (source == "full2") return SFT::full_shift(2);
  return SFT::parse(slurp(source));
}

HorseshoeParams load_params(const std::string& path) {
  if (path.empty()) return HorseshoeParams::defaults();
  return HorseshoeParams::parse_config(slurp(path));
}

LeafDirection parse_leaf(const std::string& s) {
  return s == "stable" ? LeafDirection::stable : LeafDirection::unstable;
}

json certificate_json(const std::optional<LiftCertificate>& c) {
  if (!c) return nullptr;
  return {{"m", big(c->m)}, {"n", big(c->n)}};
}

json point_json(const SquarePoint& p) { return {{"x", p.x.to_string()}, {"y", p.y.to_string()}}; }

json rect_json(const Rect& r) {
  return {{"x_lo", r.x.lo.to_string()},
          {"x_hi", r.x.hi.to_string()},
          {"y_lo", r.y.lo.to_string()},
          {"y_hi", r.y.hi.to_string()},
          {"address", r.address}};
}

json float_point_json(const FloatPoint& p) { return json::array({p.x, p.y}); }

// Registers a leaf subcommand whose options live in a fresh Opts.
template <class Opts, class Setup, class Run>
void leaf(CLI::App& parent, const std::string& name, const std::string& desc, Action& action,
          Setup setup, Run run) {
  auto opts = std::make_shared<Opts>();
  CLI::App* sub = parent.add_subcommand(name, desc);
  sub->fallthrough();
  setup(*sub, *opts);
  sub->callback([&action, opts, run] { action = [opts, run] { return run(*opts); }; });
}

CLI::App* group(CLI::App& app, const std::string& name, const std::string& desc) {
  CLI::App* g = app.add_subcommand(name, desc);
  g->require_subcommand(1);
  g->fallthrough();
  return g;
}

// ------------------------------------------------------------------ cat

void add_cat(CLI::App& app, Action& action) {
  CLI::App* cat = group(app, "cat", "cat map on the torus");

  struct Pow {
    long long n = 1;
    std::string matrix;
  };
  leaf<Pow>(
      *cat, "pow", "n-th power of the cat matrix (n may be negative)", action,
      [](CLI::App& s, Pow& o) {
        s.add_option("-n,--power", o.n, "exponent")->required();
        s.add_option("--matrix", o.matrix, "other integer matrix, [[a,b],[c,d]]");
      },
      [](const Pow& o) {
        const IntMat2 m = o.matrix.empty() ? cat_matrix() : IntMat2::parse(o.matrix);
        const IntMat2 p = mat_pow(m, o.n);
        return scalar_result(p.to_string(), {{"n", o.n}, {"matrix", p.to_string()}});
      });

  struct Apply {
    std::string point;
    long long n = 1;
  };
  leaf<Apply>(
      *cat, "apply", "f^n(p) exactly", action,
      [](CLI::App& s, Apply& o) {
        s.add_option("-p,--point", o.point, "torus point (x, y)")->required();
        s.add_option("-n,--steps", o.n, "iterations (negative: inverse map)")
            ->capture_default_str();
      },
      [](const Apply& o) {
        const TorusPoint p = TorusPoint::parse(o.point);
        const TorusPoint q = cat_apply(mat_pow(cat_matrix(), o.n), p);
        return scalar_result(q.to_string(), {{"n", o.n}, {"point", q.to_string()}});
      });

  struct Orbit {
    std::string point;
    long long from = 0;
    long long to = 10;
  };
  leaf<Orbit>(
      *cat, "orbit", "orbit segment as CSV rows n,x,y,x_float,y_float", action,
      [](CLI::App& s, Orbit& o) {
        s.add_option("-p,--point", o.point, "torus point (x, y)")->required();
        s.add_option("--from", o.from, "first time")->capture_default_str();
        s.add_option("--to", o.to, "last time")->capture_default_str();
      },
      [](const Orbit& o) {
        const TorusPoint p = TorusPoint::parse(o.point);
        const auto pts = orbit(p, o.from, o.to);
        std::string csv = "n,x,y,x_float,y_float\n";
        json rows = json::array();
        long long n = o.from;
        for (const auto& q : pts) {
          const double xf = quad_to_float(q.x()).value;
          const double yf = quad_to_float(q.y()).value;
          csv += std::to_string(n) + ",\"" + q.x().to_string() + "\",\"" + q.y().to_string() +
                 "\"," + fmt(xf) + "," + fmt(yf) + "\n";
          rows.push_back({{"n", n}, {"x", q.x().to_string()}, {"y", q.y().to_string()},
                          {"x_float", xf}, {"y_float", yf}});
          ++n;
        }
        return table_result(csv, rows);
      });

  struct Period {
    std::string point;
  };
  leaf<Period>(
      *cat, "period", "least period of a rational point", action,
      [](CLI::App& s, Period& o) {
        s.add_option("-p,--point", o.point, "rational torus point (x, y)")->required();
      },
      [](const Period& o) {
        const auto k = period(TorusPoint::parse(o.point));
        return scalar_result(std::to_string(k), {{"period", k}});
      });

  struct FixCount {
    unsigned n = 1;
  };
  leaf<FixCount>(
      *cat, "fixcount", "number of points fixed by f^n", action,
      [](CLI::App& s, FixCount& o) {
        s.add_option("-n,--power", o.n, "n >= 1")->required()->check(CLI::PositiveNumber);
      },
      [](const FixCount& o) {
        const BigInt c = fixed_point_count(o.n);
        return scalar_result(big(c), {{"n", o.n}, {"count", big(c)}});
      });

  struct Order {
    long long modulus = 2;
  };
  leaf<Order>(
      *cat, "order", "order of the cat matrix modulo m", action,
      [](CLI::App& s, Order& o) {
        s.add_option("-m,--modulus", o.modulus, "modulus >= 1")->required()->check(CLI::PositiveNumber);
      },
      [](const Order& o) {
        const auto k = matrix_order_mod(cat_matrix(), BigInt(o.modulus));
        return scalar_result(std::to_string(k), {{"modulus", o.modulus}, {"order", k}});
      });

  struct Image {
    std::string input;
    int index_side = 0;
    long long n = 1;
  };
  leaf<Image>(
      *cat, "image", "pixel cat map on a square PGM: out(i,j) = in(A^-n (i,j) mod s)", action,
      [](CLI::App& s, Image& o) {
        s.add_option("--in", o.input, "input P5 image");
        s.add_option("--index-side", o.index_side,
                     "instead of --in, start from the image with all pixels distinct");
        s.add_option("-n,--steps", o.n, "iterations")->capture_default_str();
      },
      [](const Image& o) {
        if (o.input.empty() == (o.index_side == 0)) {
          throw UsageError("cat image needs exactly one of --in and --index-side");
        }
        const GrayImage in = o.input.empty() ? index_image(o.index_side) : read_pgm(o.input);
        Result r;
        r.image = cat_image(in, o.n);
        r.data = {{"side", in.width}, {"n", o.n}, {"identical", *r.image == in}};
        r.text = r.data.dump(2);
        return r;
      });
}

// ----------------------------------------------------------------- prox

void add_prox(CLI::App& app, Action& action) {
  CLI::App* prox = group(app, "prox", "proximality on the torus");

  struct Check {
    std::string x, y, mode = "cascade";
  };
  leaf<Check>(
      *prox, "check", "exact proximality verdict with lift certificate", action,
      [](CLI::App& s, Check& o) {
        s.add_option("-x", o.x, "first point")->required();
        s.add_option("-y", o.y, "second point")->required();
        s.add_option("--mode", o.mode, "cascade (Z action) or semicascade (N action)")
            ->check(CLI::IsMember({"cascade", "semicascade"}))
            ->capture_default_str();
      },
      [](const Check& o) {
        const TimeMode mode = o.mode == "cascade" ? TimeMode::cascade : TimeMode::semicascade;
        const auto v = proximal(TorusPoint::parse(o.x), TorusPoint::parse(o.y), mode);
        json data = {{"kind", to_string(v.kind)}, {"certificate", certificate_json(v.certificate)}};
        data["leaf_slope"] = nullptr;
        if (v.kind == ProximalityKind::proximal_stable) {
          data["leaf_slope"] = leaf_slope(LeafDirection::stable).to_string();
        } else if (v.kind == ProximalityKind::proximal_unstable) {
          data["leaf_slope"] = leaf_slope(LeafDirection::unstable).to_string();
        }
        if (v.unstable_certificate) {
          data["unstable_certificate"] = certificate_json(v.unstable_certificate);
        }
        return json_result(data);
      });

  struct Cell {
    std::string x;
  };
  leaf<Cell>(
      *prox, "cell", "proximal cell of a point", action,
      [](CLI::App& s, Cell& o) { s.add_option("-x", o.x, "point")->required(); },
      [](const Cell& o) {
        const ProximalCell c = proximal_cell(TorusPoint::parse(o.x));
        json leaves = json::array();
        for (const auto& l : c.leaves) {
          leaves.push_back({{"base", l.base.to_string()},
                            {"leaf", to_string(l.direction)},
                            {"slope", leaf_slope(l.direction).to_string()}});
        }
        return json_result({{"kind", to_string(c.kind)}, {"leaves", leaves}, {"note", c.note}});
      });

  struct Profile {
    std::string x, y, direction = "forward";
    int n_max = 30;
  };
  leaf<Profile>(
      *prox, "profile", "distance d(f^n x, f^n y) for n = 0..n_max", action,
      [](CLI::App& s, Profile& o) {
        s.add_option("-x", o.x, "first point")->required();
        s.add_option("-y", o.y, "second point")->required();
        s.add_option("--direction", o.direction, "forward or backward")
            ->check(CLI::IsMember({"forward", "backward"}))
            ->capture_default_str();
        s.add_option("--n-max", o.n_max, "last time")->capture_default_str();
      },
      [](const Profile& o) {
        const auto dir =
            o.direction == "forward" ? TimeDirection::forward : TimeDirection::backward;
        const auto prof =
            contraction_profile(TorusPoint::parse(o.x), TorusPoint::parse(o.y), dir, o.n_max);
        std::string csv = "n,distance\n";
        json rows = json::array();
        for (const auto& s : prof) {
          csv += std::to_string(s.n) + "," + fmt(s.distance) + "\n";
          rows.push_back({{"n", s.n}, {"distance", s.distance}});
        }
        return table_result(csv, rows);
      });

  struct Witness {
    std::vector<std::string> points;
    std::string leaf = "stable";
    int steps = 20;
  };
  leaf<Witness>(
      *prox, "iwitness", "contraction schedule of a finite set on one leaf", action,
      [](CLI::App& s, Witness& o) {
        s.add_option("--point", o.points, "point on the leaf (repeatable)")->required();
        s.add_option("--leaf", o.leaf, "stable or unstable")
            ->check(CLI::IsMember({"stable", "unstable"}))
            ->capture_default_str();
        s.add_option("--steps", o.steps, "iterations")->capture_default_str();
      },
      [](const Witness& o) {
        std::vector<TorusPoint> pts;
        for (const auto& p : o.points) pts.push_back(TorusPoint::parse(p));
        const auto r = i_proximal_witness(pts, parse_leaf(o.leaf), o.steps);
        return json_result({{"leaf", to_string(r.leaf)},
                            {"time", r.time == TimeDirection::forward ? "forward" : "backward"},
                            {"lift_spread", r.lift_spread.to_string()},
                            {"max_distance", r.max_distance},
                            {"bound", r.bound},
                            {"final_spread", r.final_spread},
                            {"passed", r.passed}});
      });
}

// ---------------------------------------------------------------- shift

void add_shift(CLI::App& app, Action& action) {
  CLI::App* sh = group(app, "shift", "shift spaces and shifts of finite type");

  struct Prox {
    std::string x, y;
    int alphabet = 2;
  };
  leaf<Prox>(
      *sh, "prox", "proximality of eventually periodic sequences", action,
      [](CLI::App& s, Prox& o) {
        s.add_option("-x", o.x, "sequence, e.g. \"(0)* 1 . 0 (10)*\"")->required();
        s.add_option("-y", o.y, "sequence")->required();
        s.add_option("--alphabet", o.alphabet, "alphabet size")->capture_default_str();
      },
      [](const Prox& o) {
        const BiSeq x = BiSeq::parse(o.x, o.alphabet);
        const BiSeq y = BiSeq::parse(o.y, o.alphabet);
        const auto v = seq_proximal(x, y);
        json data = {{"proximal", v.proximal}, {"asymptotic", seq_asymptotic(x, y)}};
        data["certificate"] = nullptr;
        if (v.proximal) {
          data["certificate"] = {{"start", v.certificate.start},
                                 {"window", v.certificate.window}};
        }
        return scalar_result(v.proximal ? "proximal" : "not proximal", data);
      });

  struct Mix {
    std::string sft = "full2", u, v;
    long long n_max = 20;
  };
  leaf<Mix>(
      *sh, "mix", "gap after which shift^n(U) always meets V", action,
      [](CLI::App& s, Mix& o) {
        s.add_option("--sft", o.sft, "adler-weiss, full2 or a matrix file")->capture_default_str();
        s.add_option("-u", o.u, "cylinder word@start")->required();
        s.add_option("-v", o.v, "cylinder word@start")->required();
        s.add_option("--n-max", o.n_max, "largest shift")->capture_default_str();
      },
      [](const Mix& o) {
        const SFT x = load_sft(o.sft);
        const auto g = mixing_gap(x, Cylinder::parse(o.u, x.alphabet_size()),
                                  Cylinder::parse(o.v, x.alphabet_size()), o.n_max);
        std::string csv = "n,hit\n";
        json hits = json::array();
        for (std::size_t n = 0; n < g.hits.size(); ++n) {
          csv += std::to_string(n) + "," + (g.hits[n] ? "1" : "0") + "\n";
          hits.push_back(static_cast<bool>(g.hits[n]));
        }
        json data = {{"hits", hits}};
        data["n_star"] = g.n_star ? json(*g.n_star) : json(nullptr);
        Result r = scalar_result(g.n_star ? std::to_string(*g.n_star) : "none", data);
        r.csv = csv;
        return r;
      });

  struct Primitive {
    std::string sft = "adler-weiss";
    int k_max = 64;
  };
  leaf<Primitive>(
      *sh, "primitive", "least k with A^k > 0", action,
      [](CLI::App& s, Primitive& o) {
        s.add_option("--sft", o.sft, "adler-weiss, full2 or a matrix file")->capture_default_str();
        s.add_option("--k-max", o.k_max, "search bound")->capture_default_str();
      },
      [](const Primitive& o) {
        const auto k = sft_primitivity(load_sft(o.sft), o.k_max);
        json data;
        data["k"] = k ? json(*k) : json(nullptr);
        return scalar_result(k ? std::to_string(*k) : "none", data);
      });

  struct Count {
    std::string sft = "full2";
    unsigned n = 1;
  };
  leaf<Count>(
      *sh, "count", "number of points of period n (trace of A^n)", action,
      [](CLI::App& s, Count& o) {
        s.add_option("--sft", o.sft, "adler-weiss, full2 or a matrix file")->capture_default_str();
        s.add_option("-n,--period", o.n, "n >= 1")->required();
      },
      [](const Count& o) {
        const BigInt c = sft_periodic_count(load_sft(o.sft), o.n);
        return scalar_result(big(c), {{"n", o.n}, {"count", big(c)}});
      });

  struct Member {
    std::string sft = "full2", seq;
  };
  leaf<Member>(
      *sh, "member", "whether a sequence lies in the SFT", action,
      [](CLI::App& s, Member& o) {
        s.add_option("--sft", o.sft, "adler-weiss, full2 or a matrix file")->capture_default_str();
        s.add_option("-s,--seq", o.seq, "sequence")->required();
      },
      [](const Member& o) {
        const SFT x = load_sft(o.sft);
        const bool in = seq_in_sft(BiSeq::parse(o.seq, x.alphabet_size()), x);
        return scalar_result(in ? "true" : "false", {{"member", in}});
      });
}

// ------------------------------------------------------------------- hs

void add_hs(CLI::App& app, Action& action) {
  CLI::App* hs = group(app, "hs", "piecewise-affine Smale horseshoe");

  struct Apply {
    std::string params, point;
    long long n = 1;
  };
  leaf<Apply>(
      *hs, "apply", "f^n(p); negative n applies the inverse", action,
      [](CLI::App& s, Apply& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-p,--point", o.point, "point (x, y) of the unit square")->required();
        s.add_option("-n,--steps", o.n, "iterations")->capture_default_str();
      },
      [](const Apply& o) {
        const HorseshoeParams prm = load_params(o.params);
        SquarePoint p = SquarePoint::parse(o.point);
        for (long long i = 0; i < std::abs(o.n); ++i) {
          p = o.n > 0 ? hs_apply(prm, p) : hs_inverse(prm, p);
        }
        return scalar_result(p.to_string(), point_json(p));
      });

  struct Encode {
    std::string params, point;
    int depth = 4;
  };
  leaf<Encode>(
      *hs, "encode", "itinerary window s_-k .. s_-1 . s_0 .. s_k", action,
      [](CLI::App& s, Encode& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-p,--point", o.point, "point")->required();
        s.add_option("-k,--depth", o.depth, "depth")->capture_default_str();
      },
      [](const Encode& o) {
        const auto w = encode(load_params(o.params), SquarePoint::parse(o.point), o.depth);
        return scalar_result(w.to_string(), {{"window", w.to_string()}});
      });

  struct Decode {
    std::string params, window;
  };
  leaf<Decode>(
      *hs, "decode", "cell of all points with the given itinerary window", action,
      [](CLI::App& s, Decode& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-w,--window", o.window, "window such as 01.110")->required();
      },
      [](const Decode& o) {
        return json_result(
            rect_json(decode(load_params(o.params), SymbolWindow::parse(o.window))));
      });

  struct RectCmd {
    std::string params, address, orientation = "vertical";
  };
  leaf<RectCmd>(
      *hs, "rect", "vertical or horizontal rectangle for an address", action,
      [](CLI::App& s, RectCmd& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-a,--address", o.address, "binary word")->required();
        s.add_option("--orientation", o.orientation, "vertical or horizontal")
            ->check(CLI::IsMember({"vertical", "horizontal"}))
            ->capture_default_str();
      },
      [](const RectCmd& o) {
        const auto kind = o.orientation == "vertical" ? RectKind::vertical : RectKind::horizontal;
        return json_result(
            rect_json(rect_for_address(load_params(o.params), parse_word(o.address, 2), kind)));
      });

  struct Check {
    std::string params, point;
    int depth = 4;
  };
  leaf<Check>(
      *hs, "check", "encode(f(p)) equals the shifted encode(p)", action,
      [](CLI::App& s, Check& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-p,--point", o.point, "point")->required();
        s.add_option("-k,--depth", o.depth, "depth")->capture_default_str();
      },
      [](const Check& o) {
        const bool ok = conjugacy_check(load_params(o.params), SquarePoint::parse(o.point), o.depth);
        return scalar_result(ok ? "true" : "false", {{"conjugate", ok}});
      });

  struct Periodic {
    std::string params, word;
  };
  leaf<Periodic>(
      *hs, "periodic", "the invariant point with itinerary word^inf", action,
      [](CLI::App& s, Periodic& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-w,--word", o.word, "binary period word")->required();
      },
      [](const Periodic& o) {
        const SquarePoint p = periodic_point(load_params(o.params), parse_word(o.word, 2));
        return scalar_result(p.to_string(), point_json(p));
      });

  struct Prox {
    std::string params, x, y;
    int depth = 12;
    int horizon = 40;
  };
  leaf<Prox>(
      *hs, "prox", "symbolic proximality of two codes checked against geometry", action,
      [](CLI::App& s, Prox& o) {
        s.add_option("--params", o.params, "key = value parameter file");
        s.add_option("-x", o.x, "code")->required();
        s.add_option("-y", o.y, "code")->required();
        s.add_option("--depth", o.depth, "materialization depth")->capture_default_str();
        s.add_option("--horizon", o.horizon, "last shift")->capture_default_str();
      },
      [](const Prox& o) {
        const auto r = hs_proximal(load_params(o.params), BiSeq::parse(o.x), BiSeq::parse(o.y),
                                   o.depth, o.horizon);
        return json_result({{"symbolic", r.symbolic},
                            {"corroborated", r.corroborated},
                            {"min_distance", r.min_distance},
                            {"tail_max", r.tail_max},
                            {"tolerance", r.tolerance},
                            {"distances", r.distances}});
      });
}

// ---------------------------------------------------------------- ultra

std::vector<long long> parse_times(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    long long v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    while (first != last && *first == ' ') ++first;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last) throw ParseError("bad time '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

void add_ultra(CLI::App& app, Action& action) {
  CLI::App* ul = group(app, "ultra", "finite-stage probes of iterate limits");

  struct Probe {
    std::string point, times;
    long long start = 1, step = 1;
    int count = 30;
    double tol = LimitProbe::kDefaultTolerance;
  };
  leaf<Probe>(
      *ul, "probe", "f^n(p) along a subsequence of times", action,
      [](CLI::App& s, Probe& o) {
        s.add_option("-p,--point", o.point, "torus point")->required();
        s.add_option("--times", o.times, "explicit increasing times a,b,c,...");
        s.add_option("--start", o.start, "arithmetic start")->capture_default_str();
        s.add_option("--step", o.step, "arithmetic step")->capture_default_str();
        s.add_option("--count", o.count, "arithmetic count")->capture_default_str();
        s.add_option("--tol", o.tol, "tolerance")->capture_default_str();
      },
      [](const Probe& o) {
        const LimitProbe probe = o.times.empty()
                                     ? LimitProbe::arithmetic(o.start, o.step, o.count, o.tol)
                                     : LimitProbe::explicit_times(parse_times(o.times), o.tol);
        const auto r = plim_probe(TorusPoint::parse(o.point), probe);
        json values = json::array();
        for (const auto& v : r.values) values.push_back(float_point_json(v));
        json data = {{"times", r.times},
                     {"values", values},
                     {"cauchy_radius", r.cauchy_radius},
                     {"verdict", to_string(r.verdict)}};
        data["limit"] = r.limit ? float_point_json(*r.limit) : json(nullptr);
        return json_result(data);
      });

  struct Slope {
    int n_max = 10;
    bool inverse = false;
  };
  leaf<Slope>(
      *ul, "slope", "slope table F_2n/F_2n+1 against gamma - 1", action,
      [](CLI::App& s, Slope& o) {
        s.add_option("--n-max", o.n_max, "rows")->capture_default_str();
        s.add_flag("--inverse", o.inverse, "table for A^-n against 1 - gamma");
      },
      [](const Slope& o) {
        const auto rows = o.inverse ? inverse_slope_limit_table(o.n_max) : slope_limit_table(o.n_max);
        std::string csv = "n,ratio_exact,ratio_float,error_float,bound_float\n";
        json data = json::array();
        for (const auto& r : rows) {
          csv += std::to_string(r.n) + "," + r.ratio.to_string() + "," + fmt(r.ratio_float) + "," +
                 fmt(r.error) + "," + fmt(r.bound) + "\n";
          data.push_back({{"n", r.n},
                          {"ratio_exact", r.ratio.to_string()},
                          {"ratio_float", r.ratio_float},
                          {"error_float", r.error},
                          {"bound_float", r.bound},
                          {"bound_holds", r.bound_holds}});
        }
        return table_result(csv, data);
      });

  struct Idem {
    std::string point;
    int stages = 5;
  };
  leaf<Idem>(
      *ul, "idem", "f^(jk)(f^(ik)(x)) = x for k = period(x)", action,
      [](CLI::App& s, Idem& o) {
        s.add_option("-p,--point", o.point, "rational torus point")->required();
        s.add_option("--stages", o.stages, "largest i, j")->capture_default_str();
      },
      [](const Idem& o) {
        const bool ok = idempotent_stage_check(TorusPoint::parse(o.point), o.stages);
        return scalar_result(ok ? "true" : "false", {{"passed", ok}});
      });

  struct Recur {
    std::string point;
    long long horizon = 20;
    double eps = 1e-9;
  };
  leaf<Recur>(
      *ul, "recur", "times n <= horizon with d(f^n x, x) < eps", action,
      [](CLI::App& s, Recur& o) {
        s.add_option("-p,--point", o.point, "torus point")->required();
        s.add_option("--horizon", o.horizon, "last time")->capture_default_str();
        s.add_option("--eps", o.eps, "radius")->capture_default_str();
      },
      [](const Recur& o) {
        const auto r = recurrence_times(TorusPoint::parse(o.point), o.horizon, o.eps);
        std::string text;
        for (long long t : r.times) text += (text.empty() ? "" : ",") + std::to_string(t);
        return scalar_result(text, {{"times", r.times}, {"max_gap", r.max_gap}});
      });
}

void emit(const Result& r, const std::string& format, const std::string& out_path,
          std::ostream& out) {
  if (r.image) {
    if (format != "text" && format != "pgm") {
      throw UsageError("image output is PGM only");
    }
    if (out_path.empty()) throw UsageError("image output needs --out");
    write_atomically(out_path, [&](std::ostream& f) { write_pgm(f, *r.image); });
    out << r.text << '\n';
    return;
  }
  std::string payload;
  if (format == "json") {
    payload = r.data.dump(2);
  } else if (format == "csv") {
    if (r.csv.empty()) throw UsageError("this command has no CSV form");
    payload = r.csv;
  } else if (format == "text") {
    payload = r.text;
  } else {
    throw UsageError("format '" + format + "' does not apply to this command");
  }
  if (!payload.empty() && payload.back() != '\n') payload.push_back('\n');
  if (out_path.empty()) {
    out << payload;
  } else {
    write_atomically(out_path, [&](std::ostream& f) { f << payload; });
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || key.find_first_of(" \t") != std::string::npos || key.front() == '-') {
      throw ParseError("line " + std::to_string(lineno) + ": bad key '" + key + "'");
    }
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError("duplicate key '" + key + "'");
    }
    seen.push_back(key);
    if (key == "command") {
      cfg.command = value;
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "format") {
      cfg.format = value;
    } else {
      cfg.parameters.emplace_back(key, value);
    }
  }
  if (cfg.command.empty()) throw ParseError("config needs a command");
  return cfg;
}

std::vector<std::string> ExperimentConfig::to_args() const {
  std::vector<std::string> args;
  std::istringstream words(command);
  for (std::string w; words >> w;) args.push_back(w);
  if (!args.empty() && args.front() == "run") throw ParseError("configs cannot nest run");
  for (const auto& [key, value] : parameters) {
    args.push_back(key.size() == 1 ? "-" + key : "--" + key);
    if (!value.empty()) args.push_back(value);
  }
  if (!output_path.empty()) args.insert(args.end(), {"--out", output_path});
  if (!format.empty()) args.insert(args.end(), {"--format", format});
  return args;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on the cat map, shifts of finite type and the horseshoe",
               "hyperdyn"};
  app.require_subcommand(1);
  std::string format = "text";
  std::string out_path;
  app.add_option("--format", format, "text, json, csv or pgm")
      ->check(CLI::IsMember({"text", "json", "csv", "pgm"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "write output here (atomically) instead of stdout");

  Action action;
  add_cat(app, action);
  add_prox(app, action);
  add_shift(app, action);
  add_hs(app, action);
  add_ultra(app, action);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a key = value experiment config");
  run->add_option("config", config_path, "config file")->required();
  run->callback([&] {
    action = [&]() -> Result {
      std::ostringstream inner_out, inner_err;
      const auto cfg = ExperimentConfig::parse(slurp(config_path));
      const int code = run_cli(cfg.to_args(), inner_out, inner_err);
      if (code != kExitOk) throw NestedExit{code, inner_err.str()};
      Result r;
      r.text = inner_out.str();
      return r;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    Result r = action();
    if (run->parsed()) {
      out << r.text;
      return kExitOk;
    }
    emit(r, format, out_path, out);
    return kExitOk;
  } catch (const NestedExit& e) {
    err << e.message;
    return e.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hyperdyn::tools
