#ifndef CKY_TOOLS_RUNIO_HPP
#define CKY_TOOLS_RUNIO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cky/interval.hpp"

namespace cky::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Environment variable naming the default output root.
inline constexpr const char* kOutRootEnv = "CKY_OUT_ROOT";

fs::path default_out_root();

// FNV-1a over the canonical (sorted-key) dump of the resolved config.
std::uint64_t fnv1a(const std::string& s);
std::string config_hash(const json& resolved);

json to_json(const Interval& x);
Interval interval_from_json(const json& j);

// Shortest round-trip decimal form.
std::string fmt(double v);

class CsvWriter {
public:
    CsvWriter(const fs::path& p, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row_raw(const std::vector<std::string>& cells);
    ~CsvWriter();

private:
    std::FILE* f_ = nullptr;
    fs::path path_;
};

struct RunDir {
    std::string command;
    json config;
    std::string hash;
    fs::path dir;
    std::vector<std::string> files;

    fs::path file(const std::string& name);
    // Write manifest.json (config, hash, file list, result summary, timing).
    void finish(const json& result, double seconds) const;
};

// Creates <root>/<command>-<hash prefix>, replacing any earlier run with the same config.
RunDir open_run(const fs::path& root, const std::string& command, const json& resolved);

void write_json(const fs::path& p, const json& j);
json read_json(const fs::path& p);

} // namespace cky::cli

#endif
