#include "cftrack/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <string_view>
#include <type_traits>
#include <vector>

namespace cftrack {

namespace {

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Parsers return false when the text is not a value of the right type or
// the value is out of range.
struct Entry
{
    std::string key;
    std::function<bool(TrackerConfig&, std::string_view)> set;
    std::function<std::string(const TrackerConfig&)> get;
};

bool parse_number(std::string_view text, double& out)
{
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc() && res.ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_integer(std::string_view text, long& out)
{
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

template <typename Field, typename Check>
Entry real_entry(std::string key, Field field, Check ok)
{
    return {std::move(key),
            [field, ok](TrackerConfig& c, std::string_view text) {
                double v = 0.0;
                if (!parse_number(text, v) || !ok(v))
                    return false;
                field(c) = v;
                return true;
            },
            [field](const TrackerConfig& c) { return format_double(field(c)); }};
}

template <typename Field, typename Check>
Entry integer_entry(std::string key, Field field, Check ok)
{
    return {std::move(key),
            [field, ok](TrackerConfig& c, std::string_view text) {
                long v = 0;
                if (!parse_integer(text, v) || !ok(v))
                    return false;
                field(c) = static_cast<std::remove_cvref_t<decltype(field(c))>>(v);
                return true;
            },
            [field](const TrackerConfig& c) { return std::to_string(field(c)); }};
}

template <typename Field>
Entry bool_entry(std::string key, Field field)
{
    return {std::move(key),
            [field](TrackerConfig& c, std::string_view text) {
                if (text == "true" || text == "1")
                    field(c) = true;
                else if (text == "false" || text == "0")
                    field(c) = false;
                else
                    return false;
                return true;
            },
            [field](const TrackerConfig& c) {
                return std::string(field(c) ? "true" : "false");
            }};
}

auto positive = [](double v) { return v > 0.0; };
auto non_negative = [](double v) { return v >= 0.0; };
auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
auto open_unit = [](double v) { return v > 0.0 && v <= 1.0; };
auto any_real = [](double) { return true; };

#define CFG_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> table = {
        real_entry("lambda", CFG_FIELD(lambda), positive),
        real_entry("kernel_sigma", CFG_FIELD(kernel_sigma), positive),
        real_entry("label_sigma_factor", CFG_FIELD(label_sigma_factor), positive),
        real_entry("eta", CFG_FIELD(eta), unit),
        real_entry("padding", CFG_FIELD(padding), [](double v) { return v >= 1.0; }),
        integer_entry("max_template_side", CFG_FIELD(max_template_side), [](long v) { return v >= 4; }),
        {"feature",
         [](TrackerConfig& c, std::string_view text) {
             if (text == "gray")
                 c.features.kind = FeatureKind::Grayscale;
             else if (text == "hog")
                 c.features.kind = FeatureKind::Hog;
             else
                 return false;
             return true;
         },
         [](const TrackerConfig& c) { return std::string(c.features.kind == FeatureKind::Hog ? "hog" : "gray"); }},
        integer_entry("hog_bins", CFG_FIELD(features.hog_bins), [](long v) { return v >= 1; }),
        integer_entry("hog_cell", CFG_FIELD(features.hog_cell), [](long v) { return v >= 1; }),
        real_entry("hog_clip", CFG_FIELD(features.hog_clip), positive),
        real_entry("peak_ratio_threshold", CFG_FIELD(peak_ratio_threshold), open_unit),
        real_entry("apsr_ratio_threshold", CFG_FIELD(apsr_ratio_threshold), open_unit),
        integer_entry("warmup_frames", CFG_FIELD(warmup_frames), [](long v) { return v >= 1; }),
        real_entry("proposal_scale_min", CFG_FIELD(proposals.scale_min), positive),
        real_entry("proposal_scale_max", CFG_FIELD(proposals.scale_max), positive),
        real_entry("proposal_scale_step", CFG_FIELD(proposals.scale_step), [](double v) { return v > 1.0; }),
        real_entry("proposal_stride_fraction", CFG_FIELD(proposals.stride_fraction), positive),
        real_entry("proposal_min_stride", CFG_FIELD(proposals.min_stride), positive),
        real_entry("nms_threshold", CFG_FIELD(proposals.nms_threshold), open_unit),
        integer_entry("max_proposals", CFG_FIELD(proposals.max_proposals), [](long v) { return v >= 1; }),
        real_entry("svm_learn_rate", CFG_FIELD(svm_learn_rate), positive),
        real_entry("svm_reg", CFG_FIELD(svm_reg), non_negative),
        real_entry("svm_gate_threshold", CFG_FIELD(svm_gate_threshold), any_real),
        real_entry("zeta", CFG_FIELD(redetect.zeta), non_negative),
        real_entry("gamma1", CFG_FIELD(redetect.gamma1), unit),
        real_entry("redetect_region_scale", CFG_FIELD(redetect.region_scale), [](double v) { return v > 1.0; }),
        integer_entry("redetect_expand_after", CFG_FIELD(redetect.expand_after), [](long v) { return v >= 1; }),
        real_entry("redetect_response_floor", CFG_FIELD(redetect.response_floor), non_negative),
        real_entry("gamma2", CFG_FIELD(scale.gamma2), unit),
        integer_entry("keep_top", CFG_FIELD(scale.keep_top), [](long v) { return v >= 0; }),
        real_entry("band_lo", CFG_FIELD(scale.band_lo), unit),
        real_entry("band_hi", CFG_FIELD(scale.band_hi), unit),
        real_entry("accept_ratio", CFG_FIELD(scale.accept_ratio), positive),
        real_entry("scale_region_scale", CFG_FIELD(scale.region_scale), [](double v) { return v >= 1.0; }),
        integer_entry("scale_stride", CFG_FIELD(scale.stride), [](long v) { return v >= 1; }),
        {"scale_response",
         [](TrackerConfig& c, std::string_view text) {
             if (text == "aligned")
                 c.scale.response = ScaleResponse::Aligned;
             else if (text == "peak")
                 c.scale.response = ScaleResponse::Peak;
             else
                 return false;
             return true;
         },
         [](const TrackerConfig& c) {
             return std::string(c.scale.response == ScaleResponse::Peak ? "peak" : "aligned");
         }},
        bool_entry("enable_redetect", CFG_FIELD(enable_redetect)),
        bool_entry("enable_scale", CFG_FIELD(enable_scale)),
        bool_entry("enable_svm_gate", CFG_FIELD(enable_svm_gate)),
        real_entry("min_box_area", CFG_FIELD(min_box_area), positive),
    };
    return table;
}

#undef CFG_FIELD

}  // namespace

TrackerConfig parse_config(std::istream& in)
{
    TrackerConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty())
            continue;

        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(text.substr(0, eq)));
        const std::string_view value = trim(text.substr(eq + 1));

        const auto& table = entries();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.key == key; });
        if (it == table.end())
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!it->set(config, value))
            throw ConfigError("config line " + std::to_string(line_no) + ": invalid value '" + std::string(value) +
                              "' for key '" + key + "'");
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return config;
}

TrackerConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

void dump_config(std::ostream& out, const TrackerConfig& config)
{
    for (const auto& e : entries())
        out << e.key << " = " << e.get(config) << '\n';
}

}  // namespace cftrack
