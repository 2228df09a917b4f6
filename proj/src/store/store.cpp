#include "harmfrob/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hf {

namespace fs = std::filesystem;

CacheRecord CacheRecord::make(std::string kind, long p, int alpha, std::string index, int b, const PAdic& v) {
    CacheRecord r;
    r.kind = std::move(kind);
    r.p = p;
    r.alpha = alpha;
    r.index = std::move(index);
    r.b = b;
    r.value = v;
    return r;
}

std::string CacheRecord::line() const {
    std::ostringstream os;
    os << version << '\t' << kind << '\t' << p << '\t' << alpha << '\t' << index << '\t' << b << '\t';
    if (value.is_exact_zero()) {
        os << "inf\tinf\t";
    } else {
        os << value.rel_precision() << '\t' << value.valuation() << '\t';
        auto d = value.digits();
        for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    }
    os << '\n';
    return os.str();
}

std::optional<CacheRecord> CacheRecord::parse(const std::string& raw) {
    std::string line = raw;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, '\t')) f.push_back(tok);
    if (f.size() == 8) f.emplace_back();
    if (f.size() != 9) return std::nullopt;
    try {
        CacheRecord r;
        r.version = std::stoi(f[0]);
        r.kind = f[1];
        r.p = std::stol(f[2]);
        r.alpha = std::stoi(f[3]);
        r.index = f[4];
        r.b = std::stoi(f[5]);
        if (f[6] == "inf") {
            r.value = PAdic::exact_zero(r.p);
            return r;
        }
        long rel = std::stol(f[6]), v = std::stol(f[7]);
        BigInt u = 0;
        std::vector<long> digits;
        std::stringstream ds(f[8]);
        while (std::getline(ds, tok, ',')) digits.push_back(std::stol(tok));
        for (size_t i = digits.size(); i-- > 0;) u = u * r.p + digits[i];
        r.value = PAdic::from_parts(r.p, v, u, v + rel);
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

CacheStore::CacheStore(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path CacheStore::file_for(const std::string& kind, long p) const {
    return dir_ / (kind + "_p" + std::to_string(p) + ".tsv");
}

void CacheStore::absorb(FileState& st, const CacheRecord& r) {
    Key k{r.alpha, r.index, r.b};
    auto it = st.best.find(k);
    if (it == st.best.end() || it->second.precision() < r.value.precision()) st.best[k] = r.value;
}

void CacheStore::refresh(const fs::path& f, FileState& st) {
    std::error_code ec;
    auto size = fs::file_size(f, ec);
    if (ec || size <= st.offset) return;
    std::ifstream in(f, std::ios::binary);
    in.seekg(static_cast<std::streamoff>(st.offset));
    std::string chunk(size - st.offset, '\0');
    in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    chunk.resize(static_cast<size_t>(in.gcount()));
    size_t start = 0;
    for (size_t nl; (nl = chunk.find('\n', start)) != std::string::npos; start = nl + 1) {
        auto rec = CacheRecord::parse(chunk.substr(start, nl - start));
        if (!rec) {
            ++warnings_;
            std::cerr << "warning: skipping malformed cache line in " << f << "\n";
        } else if (rec->version != kCacheFormatVersion) {
            ++warnings_;
            std::cerr << "warning: ignoring cache record with format version " << rec->version << " in " << f << "\n";
        } else {
            absorb(st, *rec);
        }
    }
    st.offset += start;   // a trailing partial line is read again next time
}

void CacheStore::put(const CacheRecord& r) {
    auto f = file_for(r.kind, r.p);
    std::string line = r.line();
    int fd = ::open(f.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) throw std::runtime_error("cannot open cache file " + f.string());
    ::flock(fd, LOCK_EX);
    const char* data = line.data();
    size_t left = line.size();
    while (left > 0) {
        ssize_t n = ::write(fd, data, left);
        if (n <= 0) break;
        data += n;
        left -= static_cast<size_t>(n);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (left > 0) throw std::runtime_error("short write to cache file " + f.string());
}

std::optional<PAdic> CacheStore::get(const std::string& kind, long p, int alpha, const std::string& index, int b,
                                     long min_abs_precision) {
    auto f = file_for(kind, p);
    std::lock_guard<std::mutex> lock(mu_);
    auto& st = files_[f];
    refresh(f, st);
    auto it = st.best.find(Key{alpha, index, b});
    if (it == st.best.end() || it->second.precision() < min_abs_precision) return std::nullopt;
    return it->second;
}

size_t CacheStore::gc() {
    std::lock_guard<std::mutex> lock(mu_);
    size_t kept = 0;
    std::vector<fs::path> paths;
    for (auto& e : fs::directory_iterator(dir_))
        if (e.path().extension() == ".tsv") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (auto& f : paths) {
        int fd = ::open(f.c_str(), O_RDWR);
        if (fd < 0) continue;
        ::flock(fd, LOCK_EX);
        FileState st;
        refresh(f, st);
        std::map<Key, CacheRecord> best;
        std::ifstream in(f);
        std::string line;
        while (std::getline(in, line)) {
            auto r = CacheRecord::parse(line);
            if (!r || r->version != kCacheFormatVersion) continue;
            Key k{r->alpha, r->index, r->b};
            auto it = best.find(k);
            if (it == best.end() || it->second.value.precision() < r->value.precision()) best[k] = *r;
        }
        fs::path tmp = f;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            for (auto& [k, r] : best) out << r.line();
        }
        fs::rename(tmp, f);
        ::flock(fd, LOCK_UN);
        ::close(fd);
        kept += best.size();
        files_.erase(f);
    }
    return kept;
}

}  // namespace hf
