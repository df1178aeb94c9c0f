#include "pk/cache.hpp"

#include <fstream>
#include <sstream>

namespace pk {

std::string cache_header_string(const DworkParams& P) {
    std::ostringstream os;
    os << "{\"schema_version\":" << CACHE_SCHEMA_VERSION << ",\"p\":" << P.p << ",\"a\":" << P.a
       << ",\"n\":" << P.n << ",\"N\":" << P.N_target << ",\"M\":" << P.M
       << ",\"W\":" << P.Gmax_scaled << ",\"modulus\":[";
    for (size_t i = 0; i < P.R->modulus.size(); ++i)
        os << (i ? "," : "") << P.R->modulus[i];
    os << "]}";
    return os.str();
}

std::string cache_key(const DworkParams& P) { return to_hex(fnv1a(cache_header_string(P))); }

namespace {

std::string payload_string(const FrobeniusMatrix& A) {
    std::ostringstream os;
    for (u32 i = 0; i <= A.P.n; ++i)
        for (u32 j = 0; j <= A.P.n; ++j)
            for (u32 r = 0; r < A.P.M; ++r) {
                const auto& c = A.a[i][j][r].coords();
                for (size_t t = 0; t < c.size(); ++t) os << c[t] << (t + 1 < c.size() ? "," : "");
                os << ";";
            }
    return os.str();
}

}  // namespace

std::filesystem::path cache_store(const std::filesystem::path& dir, const FrobeniusMatrix& A) {
    std::filesystem::create_directories(dir);
    std::string header = cache_header_string(A.P);
    std::string payload = payload_string(A);
    u64 checksum = fnv1a(payload);
    auto path = dir / (cache_key(A.P) + ".frob");
    auto tmp = dir / (cache_key(A.P) + ".frob.tmp." + std::to_string(::getpid()));
    {
        std::ofstream f(tmp);
        f << header << "\n" << payload << "\n" << to_hex(checksum) << "\n";
    }
    std::filesystem::rename(tmp, path);  // single writer wins
    return path;
}

std::optional<FrobeniusMatrix> cache_load(const std::filesystem::path& dir,
                                          const DworkParams& P) {
    auto path = dir / (cache_key(P) + ".frob");
    std::ifstream f(path);
    if (!f) return std::nullopt;
    std::string header, payload, checksum;
    if (!std::getline(f, header) || !std::getline(f, payload) || !std::getline(f, checksum))
        throw CorruptCacheEntry("truncated cache entry: " + path.string());
    if (header != cache_header_string(P))
        throw CorruptCacheEntry("header mismatch: " + path.string());
    if (checksum != to_hex(fnv1a(payload)))
        throw CorruptCacheEntry("checksum mismatch: " + path.string());
    FrobeniusMatrix A;
    A.P = P;
    A.a.assign(P.n + 1, std::vector<LSeries>(P.n + 1, ls_zero(P.R_out, P.M)));
    std::istringstream is(payload);
    std::string cell;
    for (u32 i = 0; i <= P.n; ++i)
        for (u32 j = 0; j <= P.n; ++j)
            for (u32 r = 0; r < P.M; ++r) {
                if (!std::getline(is, cell, ';'))
                    throw CorruptCacheEntry("short payload: " + path.string());
                Padic x(P.R_out);
                std::istringstream cs(cell);
                std::string num;
                size_t t = 0;
                while (std::getline(cs, num, ',')) {
                    if (t >= x.coords().size())
                        throw CorruptCacheEntry("coordinate overflow: " + path.string());
                    x.coords()[t++] = std::stoull(num);
                }
                if (t != x.coords().size())
                    throw CorruptCacheEntry("coordinate underflow: " + path.string());
                A.a[i][j][r] = x;
            }
    return A;
}

FrobeniusMatrix frobenius_matrix_cached(const DworkParams& P,
                                        const std::optional<std::filesystem::path>& dir) {
    if (dir) {
        try {
            if (auto A = cache_load(*dir, P)) return *A;
        } catch (const CorruptCacheEntry&) {
            // recompute below; the bad entry will be overwritten
        }
    }
    FrobeniusMatrix A = frobenius_matrix(P);
    if (dir) cache_store(*dir, A);
    return A;
}

}  // namespace pk
