#include "runio.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace cky::cli {

fs::path default_out_root()
{
    if (const char* e = std::getenv(kOutRootEnv); e && *e)
        return fs::path(e);
    return fs::path("runs");
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const json& resolved)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(resolved.dump())));
    return buf;
}

json to_json(const Interval& x) { return json{{"lo", x.lo}, {"hi", x.hi}}; }

Interval interval_from_json(const json& j) { return Interval(j.at("lo").get<double>(), j.at("hi").get<double>()); }

std::string fmt(double v)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const fs::path& p, const std::vector<std::string>& header) : path_(p)
{
    f_ = std::fopen(p.c_str(), "w");
    if (!f_)
        throw std::runtime_error("cannot write " + p.string());
    row_raw(header);
}

void CsvWriter::row(const std::vector<double>& values)
{
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            line += ',';
        line += fmt(values[i]);
    }
    line += '\n';
    std::fputs(line.c_str(), f_);
}

void CsvWriter::row_raw(const std::vector<std::string>& cells)
{
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            line += ',';
        line += cells[i];
    }
    line += '\n';
    std::fputs(line.c_str(), f_);
}

CsvWriter::~CsvWriter()
{
    if (f_)
        std::fclose(f_);
}

fs::path RunDir::file(const std::string& name)
{
    files.push_back(name);
    return dir / name;
}

void RunDir::finish(const json& result, double seconds) const
{
    json m;
    m["command"] = command;
    m["config"] = config;
    m["config_hash"] = hash;
    m["files"] = files;
    m["result"] = result;
    m["timing_seconds"] = seconds;
    write_json(dir / "manifest.json", m);
}

RunDir open_run(const fs::path& root, const std::string& command, const json& resolved)
{
    RunDir r;
    r.command = command;
    r.config = resolved;
    r.hash = config_hash(json{{"command", command}, {"config", resolved}});
    r.dir = root / (command + "-" + r.hash.substr(0, 12));
    std::error_code ec;
    fs::remove_all(r.dir, ec);
    fs::create_directories(r.dir);
    return r;
}

void write_json(const fs::path& p, const json& j)
{
    std::ofstream o(p);
    if (!o)
        throw std::runtime_error("cannot write " + p.string());
    o << j.dump(2) << '\n';
}

json read_json(const fs::path& p)
{
    std::ifstream i(p);
    if (!i)
        throw std::runtime_error("cannot read " + p.string());
    return json::parse(i);
}

} // namespace cky::cli
