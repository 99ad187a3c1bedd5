#include "cove/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cove/attention.hpp"
#include "cove/correspondence_io.hpp"
#include "cove/error.hpp"
#include "cove/fixture.hpp"
#include "cove/op_count.hpp"
#include "cove/version.hpp"
#include "cove/viz.hpp"
#include "cove/volume_io.hpp"

namespace cove::cli {

namespace {

kernels::Isa parse_isa(const std::string& name) {
  if (name == "auto") return kernels::best_isa();
  if (name == "scalar") return kernels::Isa::scalar;
  if (name == "avx2") return kernels::Isa::avx2;
  if (name == "neon") return kernels::Isa::neon;
  throw ParameterError("unknown kernel variant '" + name + "' (expected auto, scalar, avx2 or neon)");
}

Window parse_window(std::size_t length, bool full) {
  if (full) return Window::full();
  return Window::of(length);
}

TokenCoord parse_anchor(const std::string& text) {
  unsigned f = 0, r = 0, c = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%u,%u,%u%c", &f, &r, &c, &tail) != 3) {
    throw ParameterError("--anchor expects frame,row,col (got '" + text + "')");
  }
  return {f, r, c};
}

std::string sci(std::uint64_t v) {
  std::ostringstream s;
  s << std::setprecision(3) << static_cast<double>(v) / 1e9 << "e9";
  return s.str();
}

struct FixtureArgs {
  MotionParams params;
  double noise = 0.0;
  std::string output;
  std::string truth;
};

struct CorrArgs {
  std::string input;
  std::string output;
  std::size_t k = 3;
  std::size_t window = 9;
  bool full = false;
};

struct AttendArgs {
  std::string latent;
  std::string map;
  std::string output;
  double ratio = 0.5;
  std::size_t d_k = 0;
  bool proportional = false;
};

struct BenchArgs {
  OpConfig config;
  std::size_t window = 9;
  bool full = false;
  bool measure = false;
  bool json = false;
};

struct VizArgs {
  std::string map;
  std::string anchor;
  std::string out_dir;
  std::string features;
  std::size_t scale = 1;
};

void gen_fixture(const FixtureArgs& a, std::ostream& out) {
  MotionFixture fx = synthesize_moving_patch(a.params);
  if (a.noise < 0.0) throw ParameterError("--noise must be nonnegative");
  if (a.noise > 0.0) {
    // Independent stream so the clean fixture does not depend on --noise.
    std::mt19937_64 rng(a.params.seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<float> gauss(0.0f, static_cast<float>(a.noise));
    std::vector<float> data(fx.volume.data().begin(), fx.volume.data().end());
    for (float& x : data) x += gauss(rng);
    fx.volume = FeatureVolume(fx.volume.shape(), std::move(data), false);
  }
  save_volume(a.output, fx.volume);
  if (!a.truth.empty()) {
    nlohmann::json j;
    j["displacement"] = fx.displacement;
    j["velocity"] = {a.params.velocity_row, a.params.velocity_col};
    auto& tokens = j["tokens"] = nlohmann::json::array();
    for (const auto& [origin, track] : fx.ground_truth) {
      nlohmann::json t = nlohmann::json::array();
      for (const TokenCoord& c : track) t.push_back({c.frame, c.row, c.col});
      tokens.push_back(std::move(t));
    }
    const std::string text = j.dump(2) + "\n";
    write_file(a.truth, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  out << "wrote " << a.output << " (" << fx.ground_truth.size() << " patch tokens)\n";
}

void corr(const CorrArgs& a, std::size_t threads, kernels::Isa isa, std::ostream& out, std::ostream& err) {
  const Window window = parse_window(a.window, a.full);
  const NormalizeResult norm = normalize(load_feature_volume(a.input));
  if (!norm.zero_tokens.empty()) err << "note: " << norm.zero_tokens.size() << " zero tokens left unnormalized\n";
  const CorrespondenceMap map = trace_trajectories(norm.volume, TraceOptions{a.k, window, threads, isa});
  save_correspondence_map(a.output, map);
  out << "wrote " << a.output << "\n";
}

void attend(const AttendArgs& a, std::size_t threads, kernels::Isa isa, std::ostream& out) {
  const LatentVolume latent = load_latent_volume(a.latent);
  const CorrespondenceMap map = load_correspondence_map(a.map);
  AttentionOptions opts;
  opts.merge_ratio = a.ratio;
  opts.scale_dim = a.d_k;
  opts.proportional = a.proportional;
  opts.threads = threads;
  opts.isa = isa;
  save_volume(a.output, apply_frame_attention(latent, map, opts));
  out << "wrote " << a.output << "\n";
}

void bench(BenchArgs a, std::size_t threads, kernels::Isa isa, std::ostream& out) {
  a.config.window = parse_window(a.window, a.full);
  const OpCountReport r = a.measure ? measured_ops(a.config, threads, isa) : analytic_report(a.config);
  const OpConfig& c = r.config;
  const std::string l = c.window.is_full() ? "full" : std::to_string(c.window.length());
  if (a.json) {
    nlohmann::json j;
    j["config"] = {{"n", c.frames}, {"h", c.height}, {"w", c.width}, {"d", c.channels}, {"window", l}};
    j["analytic_forward"] = r.analytic_forward;
    j["analytic_forward_backward"] = r.analytic_both;
    j["all_pairs"] = r.all_pairs;
    if (r.measured) {
      j["measured_forward"] = r.measured_forward;
      j["measured_forward_backward"] = r.measured_both;
      j["peak_candidates"] = r.peak_candidates;
      j["kernel"] = std::string(kernels::isa_name(isa));
    }
    out << j.dump() << "\n";
    return;
  }
  out << "config(N,H,W,d,l)      analytic_fwd  analytic_fwd+bwd  measured_fwd  measured_fwd+bwd  peak_set\n";
  std::ostringstream cfg;
  cfg << c.frames << "," << c.height << "," << c.width << "," << c.channels << "," << l;
  out << std::left << std::setw(22) << cfg.str() << " " << std::setw(13) << sci(r.analytic_forward) << " "
      << std::setw(17) << sci(r.analytic_both) << " ";
  if (r.measured) {
    out << std::setw(13) << sci(r.measured_forward) << " " << std::setw(17) << sci(r.measured_both) << " "
        << r.peak_candidates << "\n";
  } else {
    out << std::setw(13) << "-" << " " << std::setw(17) << "-" << " -\n";
  }
  out << "exact: analytic_fwd=" << r.analytic_forward << " all_pairs=" << r.all_pairs;
  if (r.measured) out << " measured_fwd=" << r.measured_forward << " measured_fwd+bwd=" << r.measured_both;
  out << "\n";
}

void viz(const VizArgs& a, std::ostream& out) {
  const CorrespondenceMap map = load_correspondence_map(a.map);
  FeatureVolume features;
  const FeatureVolume* fp = nullptr;
  if (!a.features.empty()) {
    features = load_feature_volume(a.features);
    fp = &features;
  }
  VizSpec spec;
  spec.anchor = parse_anchor(a.anchor);
  spec.out_dir = a.out_dir;
  spec.scale = a.scale;
  const auto paths = write_trajectory_images(map, fp, spec);
  out << "wrote " << paths.size() << " images to " << a.out_dir << "\n";
}

void roundtrip_check(const std::string& path, std::ostream& out) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  std::vector<std::uint8_t> again;
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "COVF", 4) == 0) {
    again = encode_covf(decode_covf(bytes));
  } else if (bytes.size() >= 4 && std::memcmp(bytes.data(), "COVC", 4) == 0) {
    again = encode_covc(decode_covc(bytes));
  } else {
    throw DataError(path + " is neither a COVF nor a COVC file");
  }
  if (again != bytes) throw DataError(path + " does not re-encode to identical bytes");
  out << "ok " << path << " (" << bytes.size() << " bytes)\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliding-window token correspondence and correspondence-guided attention", "cove"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::size_t threads = 0;
  std::string isa_name = "auto";
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sub->add_option("--isa", isa_name, "Kernel variant: auto, scalar, avx2, neon");
  };

  FixtureArgs fx;
  auto* gen = app.add_subcommand("gen-fixture", "Write a moving-patch fixture volume (COVF)");
  gen->set_help_flag("--help", "Print this help message and exit");  // frees --h for the height
  gen->add_option("--n", fx.params.frames, "Frames")->required();
  gen->add_option("--h", fx.params.height, "Height in tokens")->required();
  gen->add_option("--w", fx.params.width, "Width in tokens")->required();
  gen->add_option("--d", fx.params.channels, "Channels")->required();
  gen->add_option("--patch-h", fx.params.patch_height, "Patch height");
  gen->add_option("--patch-w", fx.params.patch_width, "Patch width");
  gen->add_option("--start-row", fx.params.start_row, "Patch top row in frame 0");
  gen->add_option("--start-col", fx.params.start_col, "Patch left col in frame 0");
  gen->add_option("--vel-row", fx.params.velocity_row, "Rows per frame");
  gen->add_option("--vel-col", fx.params.velocity_col, "Cols per frame");
  gen->add_option("--seed", fx.params.seed, "Random seed")->required();
  gen->add_option("--noise", fx.noise, "Std-dev of i.i.d. Gaussian noise added after synthesis");
  gen->add_option("--output", fx.output, "Output COVF path")->required();
  gen->add_option("--truth", fx.truth, "Optional ground-truth JSON path");

  CorrArgs ca;
  auto* corr_cmd = app.add_subcommand("corr", "Trace correspondences of a feature volume");
  corr_cmd->add_option("--input", ca.input, "Input COVF features")->required();
  corr_cmd->add_option("--k", ca.k, "Matches per frame");
  corr_cmd->add_option("--window", ca.window, "Window length l");
  corr_cmd->add_flag("--full", ca.full, "Search the whole adjacent frame");
  corr_cmd->add_option("--output", ca.output, "Output COVC path")->required();
  common(corr_cmd);

  AttendArgs aa;
  auto* attend_cmd = app.add_subcommand("attend", "Correspondence-guided attention over a latent volume");
  attend_cmd->add_option("--latent", aa.latent, "Input COVF latent")->required();
  attend_cmd->add_option("--map", aa.map, "Input COVC map")->required();
  attend_cmd->add_option("--ratio", aa.ratio, "Token merge ratio in [0, 1)");
  attend_cmd->add_option("--dk", aa.d_k, "Attention scale dimension (default: latent channels)");
  attend_cmd->add_flag("--proportional", aa.proportional, "Add log(group size) to attention logits");
  attend_cmd->add_option("--output", aa.output, "Output COVF path")->required();
  common(attend_cmd);

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Analytic and measured multiply-add counts");
  bench_cmd->set_help_flag("--help", "Print this help message and exit");
  bench_cmd->add_option("--n", ba.config.frames, "Frames");
  bench_cmd->add_option("--h", ba.config.height, "Height");
  bench_cmd->add_option("--w", ba.config.width, "Width");
  bench_cmd->add_option("--d", ba.config.channels, "Channels");
  bench_cmd->add_option("--window", ba.window, "Window length l");
  bench_cmd->add_flag("--full", ba.full, "Unwindowed adjacent-frame search");
  bench_cmd->add_flag("--measure", ba.measure, "Run the instrumented tracer too");
  bench_cmd->add_flag("--json", ba.json, "Machine-readable output");
  common(bench_cmd);

  VizArgs va;
  auto* viz_cmd = app.add_subcommand("viz", "Render an anchor's trajectory as one PPM per frame");
  viz_cmd->add_option("--map", va.map, "Input COVC map")->required();
  viz_cmd->add_option("--anchor", va.anchor, "Anchor as frame,row,col")->required();
  viz_cmd->add_option("--out", va.out_dir, "Output directory")->required();
  viz_cmd->add_option("--features", va.features, "Optional COVF features for background shading");
  viz_cmd->add_option("--scale", va.scale, "Pixels per token");

  std::string rt_input;
  auto* rt_cmd = app.add_subcommand("roundtrip-check", "Verify a COVF/COVC file re-encodes bit-exactly");
  rt_cmd->add_option("--input", rt_input, "COVF or COVC file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const kernels::Isa isa = parse_isa(isa_name);
    kernels::table(isa);
    if (*gen) gen_fixture(fx, out);
    else if (*corr_cmd) corr(ca, threads, isa, out, err);
    else if (*attend_cmd) attend(aa, threads, isa, out);
    else if (*bench_cmd) bench(ba, threads, isa, out);
    else if (*viz_cmd) viz(va, out);
    else if (*rt_cmd) roundtrip_check(rt_input, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace cove::cli
