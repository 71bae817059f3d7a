#include "hurst/numeric.hpp"
#include "hurst/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hurst {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::LevelExceedsResolution: return "LevelExceedsResolution";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::ZeroMoment: return "ZeroMoment";
    case ErrorCode::DegeneratePath: return "DegeneratePath";
    case ErrorCode::WindowTooDeep: return "WindowTooDeep";
    case ErrorCode::DegenerateDesign: return "DegenerateDesign";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::InvalidNu: return "InvalidNu";
    case ErrorCode::InvalidH: return "InvalidH";
    case ErrorCode::EmbeddingFailure: return "EmbeddingFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooShort: return "TooShort";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DegeneratePath:
    case ErrorCode::DegenerateDesign:
    case ErrorCode::ZeroMoment:
    case ErrorCode::EmbeddingFailure:
        return true;
    default:
        return false;
    }
}

std::size_t default_thread_count() {
    if (const char* env = std::getenv("HURST_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads) {
    if (threads == 0) threads = default_thread_count();
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace hurst
