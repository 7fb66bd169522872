#include "idq/io.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace idq::io {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<double> number_array(const json& node, const std::string& field) {
    if (!node.is_array()) {
        throw ParseError("field '" + field + "' must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_number()) {
            throw ParseError("field '" + field + "[" + std::to_string(i) + "]' is not a number");
        }
        out.push_back(node[i].get<double>());
    }
    return out;
}

void check_version(const json& doc, const std::string& where) {
    if (!doc.contains("version")) {
        throw ParseError(where + ": missing required field 'version'");
    }
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kChannelFileVersion) {
        throw ParseError(where + ": unsupported version");
    }
}

class Fnv1a64 {
  public:
    void feed(const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            hash_ ^= bytes[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void feed_double(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        unsigned char le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(bits >> (8 * i));
        feed(le, 8);
    }
    void feed_u64(std::uint64_t v) {
        unsigned char le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(v >> (8 * i));
        feed(le, 8);
    }
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 0; i < 16; ++i) {
            out[15 - i] = digits[(hash_ >> (4 * i)) & 0xf];
        }
        return out;
    }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

ChannelFile read_channel_file(const std::filesystem::path& path) {
    json doc = load_json(path);
    const std::string where = path.string();
    check_version(doc, where);
    if (!doc.contains("px")) throw ParseError(where + ": missing required field 'px'");
    if (!doc.contains("channel")) throw ParseError(where + ": missing required field 'channel'");
    std::vector<double> px = number_array(doc["px"], "px");
    if (!doc["channel"].is_array()) {
        throw ParseError(where + ": field 'channel' must be an array of rows");
    }
    std::vector<std::vector<double>> channel;
    channel.reserve(doc["channel"].size());
    for (std::size_t r = 0; r < doc["channel"].size(); ++r) {
        channel.push_back(number_array(doc["channel"][r], "channel[" + std::to_string(r) + "]"));
    }
    ChannelFile out{JointDistribution(Pmf(std::move(px)), std::move(channel)), {}, {}};
    auto read_labels = [&](const char* key) -> std::optional<std::vector<std::string>> {
        if (!doc.contains(key)) return std::nullopt;
        if (!doc[key].is_array()) throw ParseError(where + ": field '" + key + "' must be an array");
        std::vector<std::string> labels;
        for (const auto& v : doc[key]) {
            if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must hold strings");
            labels.push_back(v.get<std::string>());
        }
        return labels;
    };
    out.x_labels = read_labels("x_labels");
    out.y_labels = read_labels("y_labels");
    if (out.x_labels && out.x_labels->size() != out.joint.input_size()) {
        throw ParseError(where + ": 'x_labels' length does not match the input alphabet");
    }
    if (out.y_labels && out.y_labels->size() != out.joint.output_size()) {
        throw ParseError(where + ": 'y_labels' length does not match the output alphabet");
    }
    return out;
}

void write_channel_file(const std::filesystem::path& path, const JointDistribution& joint,
                        const std::optional<std::vector<std::string>>& x_labels,
                        const std::optional<std::vector<std::string>>& y_labels) {
    json doc;
    doc["version"] = kChannelFileVersion;
    doc["px"] = joint.px().probs();
    json rows = json::array();
    for (std::size_t x = 0; x < joint.input_size(); ++x) {
        rows.push_back(joint.channel_row(x));
    }
    doc["channel"] = std::move(rows);
    if (x_labels) doc["x_labels"] = *x_labels;
    if (y_labels) doc["y_labels"] = *y_labels;
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    out << doc.dump(2) << '\n';
}

KlPairFile read_kl_pair_file(const std::filesystem::path& path) {
    json doc = load_json(path);
    const std::string where = path.string();
    check_version(doc, where);
    if (!doc.contains("kind") || doc["kind"] != "kl_pair") {
        throw ParseError(where + ": expected kind 'kl_pair'");
    }
    if (!doc.contains("p") || !doc.contains("q")) {
        throw ParseError(where + ": missing required fields 'p' and 'q'");
    }
    KlPairFile out{Pmf(number_array(doc["p"], "p")), Pmf(number_array(doc["q"], "q")), {}};
    if (out.p.size() != out.q.size()) {
        throw ParseError(where + ": 'p' and 'q' must share an alphabet");
    }
    if (doc.contains("closed_form_divergence_bits")) {
        out.closed_form_divergence = doc["closed_form_divergence_bits"].get<double>();
    }
    return out;
}

void write_kl_pair_file(const std::filesystem::path& path, const instances::KlPair& pair) {
    json doc;
    doc["version"] = kChannelFileVersion;
    doc["kind"] = "kl_pair";
    doc["p"] = pair.p.probs();
    doc["q"] = pair.q.probs();
    doc["closed_form_divergence_bits"] = pair.closed_form_divergence;
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path.string() + "'");
    }
    out << doc.dump(2) << '\n';
}

std::string instance_digest(const JointDistribution& joint) {
    Fnv1a64 h;
    h.feed_u64(joint.input_size());
    h.feed_u64(joint.output_size());
    for (double v : joint.px().probs()) h.feed_double(v);
    for (std::size_t x = 0; x < joint.input_size(); ++x) {
        for (std::size_t y = 0; y < joint.output_size(); ++y) h.feed_double(joint.channel(x, y));
    }
    return "fnv1a64:" + h.hex();
}

std::string pmf_pair_digest(const Pmf& p, const Pmf& q) {
    Fnv1a64 h;
    h.feed_u64(p.size());
    for (double v : p.probs()) h.feed_double(v);
    for (double v : q.probs()) h.feed_double(v);
    return "fnv1a64:" + h.hex();
}

}  // namespace idq::io
