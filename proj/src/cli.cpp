#include "vfx/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "vfx/compositor.hpp"
#include "vfx/dataset.hpp"
#include "vfx/effects.hpp"
#include "vfx/guidance.hpp"
#include "vfx/spec_io.hpp"
#include "vfx/transitions.hpp"
#include "vfx/video_io.hpp"

namespace vfx::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

std::string describe(const ParamSpace& space) {
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, RangeSpace>) {
                return "[" + format_number(s.lo) + ", " + format_number(s.hi) + "]" +
                       (s.decimals ? " (" + std::to_string(s.decimals) + "dp)" : " (integer)");
            } else if constexpr (std::is_same_v<S, SetSpace>) {
                std::string out = "{";
                for (std::size_t i = 0; i < s.values.size(); ++i) out += (i ? ", " : "") + format_number(s.values[i]);
                return out + "}";
            } else if constexpr (std::is_same_v<S, ColorSpace>) {
                return "RGB 0-255 each";
            } else if constexpr (std::is_same_v<S, ChoiceSpace>) {
                std::string out = "{";
                for (std::size_t i = 0; i < s.options.size(); ++i) out += (i ? ", " : "") + s.options[i];
                return out + "}";
            } else {
                return std::string(s.allow_default ? "0.5 or " : "") + "uniform [" + format_number(s.lo) + ", " +
                       format_number(s.hi) + "] (" + std::to_string(s.decimals) + "dp)";
            }
        },
        space);
}

std::string effect_table() {
    std::string out = "Effects and sampled parameter spaces:\n";
    for (const auto& e : effect_registry()) {
        out += "  " + e.effect_id + ":";
        if (e.params.empty()) out += " (no parameters)";
        for (std::size_t i = 0; i < e.params.size(); ++i)
            out += std::string(i ? "," : "") + " " + e.params[i].name + " " + describe(e.params[i].space);
        out += "\n";
    }
    out += "Transitions: softness [0.01, 0.05] (2dp), center 0.5 or uniform [0, 1] (2dp) for\n"
           "  centered shapes, window start < end within [0, frames]:\n  ";
    for (std::size_t i = 0; i < transition_ids().size(); ++i) out += (i ? ", " : "") + transition_ids()[i];
    return out + "\n";
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + out_path);
    f << text;
    if (!f) throw IoError("write failed: " + out_path);
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
    double a = 0, b = 0;
    char sep = 0;
    std::istringstream s(text);
    if (!(s >> a >> sep >> b) || (sep != ',' && sep != 'x' && sep != ':') || !(s >> std::ws).eof())
        throw UsageError(std::string("bad ") + what + " '" + text + "'");
    return {a, b};
}

// ---------------------------------------------------------------- commands

struct SampleArgs {
    std::optional<std::uint64_t> seed;
    int frames = 33;
    std::string out;
};

int cmd_sample_config(const SampleArgs& a, std::ostream& out, std::ostream& err) {
    if (a.frames < 2) throw UsageError("--frames must be at least 2 to fit a transition window");
    std::uint64_t seed = 0;
    if (a.seed) {
        seed = *a.seed;
    } else {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        err << "vfxgen: no --seed given, using seed " << seed << '\n';
    }
    emit(spec_to_text(sample_spec(seed, a.frames)), a.out, out);
    return ok;
}

struct ApplyArgs {
    std::string clip, mask, spec, out, fps = "15";
    bool force = false;
};

int cmd_apply(const ApplyArgs& a, std::ostream&, std::ostream& err) {
    const auto spec = read_spec_file(a.spec);
    const auto clip = read_clip(a.clip, parse_rational(a.fps));
    std::optional<MaskSequence> masks;
    if (!a.mask.empty()) masks = read_mask_sequence(a.mask);
    const auto result = compose(clip, masks ? &*masks : nullptr, spec);
    write_clip(result, a.out, {a.force});
    write_spec_file(spec, fs::path(a.out) / "spec.json");
    err << "vfxgen: wrote " << result.frame_count() << " frames to " << a.out << '\n';
    return ok;
}

struct BuildArgs {
    std::string corpus, out_dir, limit = "unlimited";
    int n_effects = 0, clips_per_effect = 0, workers = 0;
    std::uint64_t seed = 0;
    bool force = false;
};

int cmd_build_triplets(const BuildArgs& a, std::ostream& out, std::ostream& err) {
    DatasetOptions o;
    o.corpus_manifest = a.corpus;
    o.out_dir = a.out_dir;
    o.n_effects = a.n_effects;
    o.clips_per_effect = a.clips_per_effect;
    o.seed = a.seed;
    o.workers = a.workers;
    o.force = a.force;
    o.progress = &err;
    if (a.limit != "unlimited") {
        try {
            std::size_t used = 0;
            const int v = std::stoi(a.limit, &used);
            if (used != a.limit.size() || v < 0) throw std::invalid_argument(a.limit);
            o.per_effect_limit = v;
        } catch (const std::exception&) {
            throw UsageError("--limit must be a non-negative integer or 'unlimited'");
        }
    }
    if (a.n_effects < 1 || a.clips_per_effect < 1) throw UsageError("--n-effects and --clips-per-effect must be positive");
    const auto summary = build_dataset(o);
    nlohmann::ordered_json j;
    j["effects"] = summary.effects;
    j["output_clips"] = summary.output_clips;
    j["triplets"] = summary.triplets;
    j["manifest"] = summary.manifest.generic_string();
    out << j.dump() << '\n';
    return ok;
}

struct MatteArgs {
    std::string transition, center = "0.5,0.5", window, size = "480x270", out;
    double softness = 0.02;
    int frames = 33;
    bool force = false;
};

int cmd_matte_preview(const MatteArgs& a, std::ostream&, std::ostream& err) {
    const auto [w, h] = parse_pair(a.size, "--size");
    const auto [cx, cy] = parse_pair(a.center, "--center");
    const auto [ws, we] = parse_pair(a.window, "--window");
    if (w < 1 || h < 1 || a.frames < 1) throw UsageError("--size and --frames must be positive");
    TransitionConfig cfg{a.transition, a.softness, cx, cy, static_cast<int>(ws), static_cast<int>(we)};
    const auto seq = matte(cfg, static_cast<int>(w), static_cast<int>(h), a.frames);
    std::vector<Plane> planes;
    for (const auto& f : seq.frames) {
        std::vector<std::uint8_t> v(f.values.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = to_u8(f.values[i] * 255.0);
        planes.emplace_back(f.width, f.height, std::move(v));
    }
    write_mask_sequence(MaskSequence(std::move(planes)), a.out, {a.force});
    err << "vfxgen: wrote " << a.frames << " matte frames to " << a.out << '\n';
    return ok;
}

struct SweepArgs {
    std::string evals, grid, out;
};

int cmd_guidance_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
    const auto ej = read_json_file(a.evals);
    const auto gj = read_json_file(a.grid);
    guidance::VelocityEvalSet evals;
    std::vector<double> lref, lin;
    double lambda_c = 0.0, epsilon = guidance::kDefaultEpsilon;
    try {
        evals.v_full = ej.at("v_full").get<std::vector<double>>();
        evals.v_no_text = ej.at("v_no_text").get<std::vector<double>>();
        evals.v_no_ref = ej.at("v_no_ref").get<std::vector<double>>();
        evals.v_no_input = ej.at("v_no_input").get<std::vector<double>>();
        lambda_c = gj.at("lambda_c").get<double>();
        lref = gj.at("lambda_ref").get<std::vector<double>>();
        lin = gj.at("lambda_in").get<std::vector<double>>();
        epsilon = gj.value("epsilon", epsilon);
    } catch (const json::exception& e) {
        throw FormatError(std::string("guidance input: ") + e.what());
    }
    nlohmann::ordered_json result;
    result["lambda_c"] = lambda_c;
    result["lambda_ref"] = lref;
    result["lambda_in"] = lin;
    result["epsilon"] = epsilon;
    auto rows = nlohmann::ordered_json::array();
    for (double r : lref) {
        auto row = nlohmann::ordered_json::array();
        for (double i : lin) row.push_back(guidance::combine(evals, {lambda_c, r, i}, epsilon));
        rows.push_back(std::move(row));
    }
    result["cells"] = std::move(rows);
    emit(result.dump() + "\n", a.out, out);
    return ok;
}

struct Y4mArgs {
    std::string clip, out, fps = "15";
};

int cmd_to_y4m(const Y4mArgs& a, std::ostream&, std::ostream&) {
    write_y4m(read_clip(a.clip, parse_rational(a.fps)), a.out);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"vfxgen: deterministic video effect compositing and triplet dataset builder", "vfxgen"};
    app.require_subcommand(1);
    app.footer(effect_table());

    SampleArgs sample;
    auto* sc = app.add_subcommand("sample-config", "Sample one composite effect spec");
    sc->add_option("--seed", sample.seed, "64-bit seed (drawn from entropy and reported when omitted)");
    sc->add_option("--frames", sample.frames, "Clip length the window is sampled for (>= 2)")->capture_default_str();
    sc->add_option("--out", sample.out, "Spec file to write (stdout when omitted)");

    ApplyArgs apply;
    auto* ac = app.add_subcommand("apply", "Apply a spec to one clip");
    ac->add_option("--clip", apply.clip, "Directory of %03d.png frames")->required();
    ac->add_option("--mask", apply.mask, "Directory of grayscale masks (required unless region is 'all')");
    ac->add_option("--spec", apply.spec, "Spec file")->required();
    ac->add_option("--out", apply.out, "Output clip directory")->required();
    ac->add_option("--fps", apply.fps, "Frame rate, integer or num/den")->capture_default_str();
    ac->add_flag("--force", apply.force, "Overwrite a non-empty output directory");

    BuildArgs build;
    auto* bc = app.add_subcommand("build-triplets", "Render effect sets and write a triplet manifest");
    bc->add_option("--corpus-manifest", build.corpus, "JSON lines {clip_dir, mask_dir, clip_id[, fps]}")->required();
    bc->add_option("--n-effects", build.n_effects, "Number of composite effects")->required();
    bc->add_option("--clips-per-effect", build.clips_per_effect, "Distinct sources per effect (K)")->required();
    bc->add_option("--limit", build.limit, "Triplets per effect, or 'unlimited' for K(K-1)")->capture_default_str();
    bc->add_option("--seed", build.seed, "Master seed; effect e uses seed + e")->capture_default_str();
    bc->add_option("--out-dir", build.out_dir, "Dataset directory")->required();
    bc->add_option("--workers", build.workers, "Worker threads (0 = all cores)")->capture_default_str();
    bc->add_flag("--force", build.force, "Replace an existing dataset in --out-dir");

    MatteArgs mp;
    auto* mc = app.add_subcommand("matte-preview", "Write a transition matte as a grayscale clip");
    mc->add_option("--transition", mp.transition, "Transition id")->required();
    mc->add_option("--softness", mp.softness, "Soft band width, [0.01, 0.05]")->capture_default_str();
    mc->add_option("--center", mp.center, "Normalized center x,y")->capture_default_str();
    mc->add_option("--window", mp.window, "start,end frame indices (start < end)")->required();
    mc->add_option("--size", mp.size, "WIDTHxHEIGHT")->capture_default_str();
    mc->add_option("--frames", mp.frames, "Frame count")->capture_default_str();
    mc->add_option("--out", mp.out, "Output directory")->required();
    mc->add_flag("--force", mp.force, "Overwrite a non-empty output directory");

    SweepArgs sw;
    auto* gc = app.add_subcommand("guidance-sweep", "Evaluate combined guidance over a (lambda_ref, lambda_in) grid");
    gc->add_option("--evals", sw.evals, "JSON with v_full, v_no_text, v_no_ref, v_no_input")->required();
    gc->add_option("--lambda-grid", sw.grid, "JSON with lambda_c, lambda_ref[], lambda_in[] and optional epsilon")
        ->required();
    gc->add_option("--out", sw.out, "Result file (stdout when omitted)");

    Y4mArgs y4m;
    auto* yc = app.add_subcommand("to-y4m", "Convert a frame directory to a YUV4MPEG2 preview");
    yc->add_option("--clip", y4m.clip, "Directory of %03d.png frames")->required();
    yc->add_option("--out", y4m.out, "Output .y4m file")->required();
    yc->add_option("--fps", y4m.fps, "Frame rate, integer or num/den")->capture_default_str();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "vfxgen: " << e.what() << '\n';
        return usage;
    }

    try {
        if (*sc) return cmd_sample_config(sample, out, err);
        if (*ac) return cmd_apply(apply, out, err);
        if (*bc) return cmd_build_triplets(build, out, err);
        if (*mc) return cmd_matte_preview(mp, out, err);
        if (*gc) return cmd_guidance_sweep(sw, out, err);
        if (*yc) return cmd_to_y4m(y4m, out, err);
    } catch (const UsageError& e) {
        err << "vfxgen: usage error: " << e.what() << '\n';
        return usage;
    } catch (const ValidationError& e) {
        err << "vfxgen: " << e.what() << '\n';
        return validation;
    } catch (const IoError& e) {
        err << "vfxgen: " << e.what() << '\n';
        return io;
    } catch (const fs::filesystem_error& e) {
        err << "vfxgen: " << e.what() << '\n';
        return io;
    } catch (const Error& e) {
        err << "vfxgen: " << e.what() << '\n';
        return validation;
    }
    return usage;
}

}  // namespace vfx::cli
