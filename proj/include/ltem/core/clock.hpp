#pragma once

#include <chrono>
#include <mutex>

#include "ltem/core/types.hpp"

namespace ltem {

/// Time source used for sample timestamps and inter-sample waits.
class Clock {
public:
    virtual ~Clock() = default;
    virtual UtcTime now() = 0;
    virtual void sleep_for(std::chrono::milliseconds duration) = 0;
};

class SystemClock final : public Clock {
public:
    UtcTime now() override;
    void sleep_for(std::chrono::milliseconds duration) override;
};

/// Manually driven clock; sleep_for advances time instantly.
class VirtualClock final : public Clock {
public:
    explicit VirtualClock(UtcTime start = UtcTime{std::chrono::milliseconds{1'715'680'800'000}})
        : now_(start) {}

    UtcTime now() override;
    void sleep_for(std::chrono::milliseconds duration) override;
    void advance(std::chrono::milliseconds duration) { sleep_for(duration); }

private:
    std::mutex mutex_;
    UtcTime now_;
};

}  // namespace ltem
