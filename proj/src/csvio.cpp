#include "csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mw {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

} // namespace

std::string format_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_param(std::uint64_t v) { return std::to_string(v); }

std::string config_digest(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& params) {
    std::vector<std::pair<std::string, std::string>> sorted = params;
    std::sort(sorted.begin(), sorted.end());
    std::string canon = command;
    for (const auto& [k, v] : sorted) {
        canon += '|';
        canon += k;
        canon += '=';
        canon += v;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
}

ArtifactWriter::ArtifactWriter(std::string path, ArtifactFormat format, std::string digest,
                               std::vector<std::pair<std::string, std::string>> params)
    : path_(std::move(path)), format_(format), digest_(std::move(digest)),
      params_(std::move(params)) {}

void ArtifactWriter::columns(std::vector<std::string> names) { columns_ = std::move(names); }

void ArtifactWriter::row(const std::vector<Cell>& cells) { rows_.push_back(cells); }

void ArtifactWriter::finish() {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path_);

    if (format_ == ArtifactFormat::Csv) {
        out << "# " << kToolName << ' ' << kToolVersion << " config=" << digest_ << '\n';
        for (std::size_t i = 0; i < columns_.size(); ++i)
            out << columns_[i] << (i + 1 < columns_.size() ? ',' : '\n');
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::visit(
                    [&](const auto& v) {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, double>) out << g15(v);
                        else out << v;
                    },
                    r[i]);
                out << (i + 1 < r.size() ? ',' : '\n');
            }
        }
    } else {
        nlohmann::ordered_json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["config"] = digest_;
        nlohmann::ordered_json p = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params_) p[k] = v;
        j["params"] = p;
        j["columns"] = columns_;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& r : rows_) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::array();
            for (const auto& cell : r)
                std::visit([&](const auto& v) { jr.push_back(v); }, cell);
            rows.push_back(std::move(jr));
        }
        j["rows"] = std::move(rows);
        out << j.dump(1, ' ') << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failure: " + path_);
}

} // namespace mw
