#include "vfx/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "vfx/palette.hpp"

namespace vfx {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json param_to_json(const ParamValue& v) {
    return std::visit(
        [](const auto& x) -> ordered_json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rgb>) return ordered_json::array({x.r, x.g, x.b});
            else return x;
        },
        v);
}

ParamValue param_from_json(const std::string& name, const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array() && j.size() == 3) {
        std::array<int, 3> c{};
        for (std::size_t i = 0; i < 3; ++i) {
            c[i] = j[i].get<int>();
            if (c[i] < 0 || c[i] > 255) throw ValidationError("parameter '" + name + "': color channel out of range");
        }
        return Rgb{static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]), static_cast<std::uint8_t>(c[2])};
    }
    throw ValidationError("parameter '" + name + "': unsupported value " + j.dump());
}

}  // namespace

ordered_json spec_to_json(const CompositeEffectSpec& spec) {
    ordered_json params = ordered_json::object();
    for (const auto& [name, value] : spec.spatial.params) params[name] = param_to_json(value);
    const auto& t = spec.transition;
    ordered_json j;
    j["effect_uid"] = spec.effect_uid;
    j["region"] = std::string(to_string(spec.region));
    j["spatial"] = {{"effect_id", spec.spatial.effect_id}, {"params", std::move(params)}};
    j["transition"] = {{"transition_id", t.transition_id},
                       {"softness", t.softness},
                       {"center", {t.center_x, t.center_y}},
                       {"window", {t.window_start, t.window_end}}};
    j["seed"] = spec.seed;
    j["palette_hash"] = palette_hash();
    j["engine_version"] = std::string(kEngineVersion);
    return j;
}

CompositeEffectSpec spec_from_json(const json& j) {
    try {
        CompositeEffectSpec spec;
        spec.effect_uid = j.at("effect_uid").get<std::string>();
        spec.region = parse_region(j.at("region").get<std::string>());
        const auto& sp = j.at("spatial");
        spec.spatial.effect_id = sp.at("effect_id").get<std::string>();
        for (const auto& [name, value] : sp.at("params").items())
            spec.spatial.params[name] = param_from_json(name, value);
        const auto& t = j.at("transition");
        spec.transition.transition_id = t.at("transition_id").get<std::string>();
        spec.transition.softness = t.at("softness").get<double>();
        spec.transition.center_x = t.at("center").at(0).get<double>();
        spec.transition.center_y = t.at("center").at(1).get<double>();
        spec.transition.window_start = t.at("window").at(0).get<int>();
        spec.transition.window_end = t.at("window").at(1).get<int>();
        spec.seed = j.at("seed").get<std::uint64_t>();
        return spec;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed effect spec: ") + e.what());
    }
}

std::string spec_to_text(const CompositeEffectSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

CompositeEffectSpec spec_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("effect spec is not valid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

void write_spec_file(const CompositeEffectSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << spec_to_text(spec);
    if (!out) throw IoError("write failed: " + path.string());
}

CompositeEffectSpec read_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return spec_from_text(s.str());
}

}  // namespace vfx
