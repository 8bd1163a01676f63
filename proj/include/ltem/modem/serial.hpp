#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ltem/modem/backend.hpp"

namespace ltem::modem {

/// Line-oriented byte transport (serial port, pty, or a scripted fake).
class LineChannel {
public:
    virtual ~LineChannel() = default;
    virtual void write(std::string_view bytes) = 0;
    /// Next CR/LF-terminated line without its terminator, or nullopt at the deadline.
    virtual std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline) = 0;
};

enum class Parity { none, even, odd };

struct SerialConfig {
    std::string device;
    unsigned baud = 115200;
    unsigned data_bits = 8;
    Parity parity = Parity::none;
    unsigned stop_bits = 1;
};

/// "/dev/ttyUSB2" or "/dev/ttyUSB2@9600".
SerialConfig parse_serial_spec(std::string_view spec);

/// POSIX termios serial port in raw mode.
class SerialPort final : public LineChannel {
public:
    explicit SerialPort(const SerialConfig& config);
    ~SerialPort() override;
    SerialPort(const SerialPort&) = delete;
    SerialPort& operator=(const SerialPort&) = delete;

    void write(std::string_view bytes) override;
    std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline) override;

private:
    int fd_ = -1;
    std::string device_;
    std::string pending_;
};

/// Command/response framing on top of a LineChannel: writes "<cmd>\r" and
/// collects lines up to OK, ERROR, +CME ERROR or +CMS ERROR. Echoed command
/// lines and blank lines are dropped.
class AtSession {
public:
    explicit AtSession(LineChannel& channel, std::chrono::milliseconds timeout = kDefaultAtTimeout)
        : channel_(channel), timeout_(timeout) {}

    AtResponse exchange(std::string_view command);

private:
    LineChannel& channel_;
    std::chrono::milliseconds timeout_;
};

/// Quectel-style modem on a serial line. Signal via AT+QENG="servingcell",
/// GNSS via AT+QGPSGNMEA="GGA" (the GNSS engine is switched on at construction).
class SerialModemBackend final : public ModemBackend {
public:
    SerialModemBackend(std::unique_ptr<LineChannel> channel, std::string name,
                       std::chrono::milliseconds timeout = kDefaultAtTimeout);

    static std::unique_ptr<SerialModemBackend> open(const SerialConfig& config);

    Capabilities capabilities() const override { return {true, true}; }
    AtResponse query_serving_cell() override;
    std::string query_gga() override;
    std::string describe() const override { return "serial modem " + name_; }

private:
    std::unique_ptr<LineChannel> channel_;
    AtSession session_;
    std::string name_;
};

}  // namespace ltem::modem
