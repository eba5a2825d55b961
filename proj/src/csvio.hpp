#ifndef MW_CSVIO_HPP
#define MW_CSVIO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mw {

inline constexpr const char* kToolName = "mwlab";
inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64 over the canonical "cmd|key=value|..." string (keys sorted,
// doubles at %.17g), rendered as 16 hex digits.  Same config, same digest,
// byte-identical artifacts.
std::string config_digest(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& params);

std::string format_param(double v);
std::string format_param(std::uint64_t v);

enum class ArtifactFormat { Csv, Json };

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

// Table artifact with the standard first-line comment row
// ("# mwlab <version> config=<digest>"), a fixed header, and %.15g numbers.
// The JSON mirror carries the same metadata and rows.
class ArtifactWriter {
  public:
    ArtifactWriter(std::string path, ArtifactFormat format, std::string digest,
                   std::vector<std::pair<std::string, std::string>> params);

    void columns(std::vector<std::string> names);
    void row(const std::vector<Cell>& cells);
    // Writes the file; throws std::runtime_error on I/O failure.
    void finish();

  private:
    std::string path_;
    ArtifactFormat format_;
    std::string digest_;
    std::vector<std::pair<std::string, std::string>> params_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace mw

#endif
