#pragma once

#include "harmfrob/arith.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hf {

inline constexpr int kCacheFormatVersion = 1;

// One line of an append-only cache file.
struct CacheRecord {
    int version = kCacheFormatVersion;
    std::string kind;        // "har" or "adjoint"
    long p = 0;
    int alpha = 0;
    std::string index;       // canonical "n_d,...,n_1"
    int b = 0;               // adjoint only
    PAdic value;

    static CacheRecord make(std::string kind, long p, int alpha, std::string index, int b, const PAdic& v);
    std::string line() const;
    // nullopt for malformed lines; version is checked by the caller
    static std::optional<CacheRecord> parse(const std::string& line);
};

// Directory of cache files, one per (kind, p). Appends take an advisory lock;
// reads never lock and only consume complete lines.
class CacheStore {
public:
    explicit CacheStore(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    void put(const CacheRecord& r);
    // record with the highest absolute precision, if that precision reaches min_abs_precision
    std::optional<PAdic> get(const std::string& kind, long p, int alpha, const std::string& index, int b,
                             long min_abs_precision);
    // rewrite every file keeping only the best record per key; returns records kept
    size_t gc();
    size_t warnings() const { return warnings_; }

private:
    using Key = std::tuple<int, std::string, int>;   // alpha, index, b
    struct FileState {
        std::uintmax_t offset = 0;
        std::map<Key, PAdic> best;
    };
    std::filesystem::path file_for(const std::string& kind, long p) const;
    void refresh(const std::filesystem::path& f, FileState& st);
    void absorb(FileState& st, const CacheRecord& r);

    std::filesystem::path dir_;
    std::mutex mu_;
    std::map<std::filesystem::path, FileState> files_;
    size_t warnings_ = 0;
};

enum class OutputFormat { text, csv, json };

struct RunConfig {
    std::vector<long> primes{5};
    std::vector<int> alphas{1};
    int weight_cutoff = 0;                 // 0: derive from the request
    std::optional<int> depth_cutoff;
    long precision = 10;
    std::string cache_dir;                 // empty: no persistent cache
    OutputFormat format = OutputFormat::text;
    unsigned long long seed = 20240601ull;

    // fill unset fields from HARMFROB_* variables
    void apply_env();
    void validate(int largest_weight) const;
};

OutputFormat parse_format(const std::string& s);

}  // namespace hf
