#include "ltem/modem/serial.hpp"

#include <fcntl.h>
#include <poll.h>
#include <termios.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "ltem/core/text.hpp"

namespace ltem::modem {

namespace {

[[noreturn]] void io_error(const std::string& what) {
    throw ModemError(ModemErrc::io, what + ": " + std::strerror(errno));
}

speed_t baud_constant(unsigned baud) {
    switch (baud) {
        case 9600: return B9600;
        case 19200: return B19200;
        case 38400: return B38400;
        case 57600: return B57600;
        case 115200: return B115200;
        case 230400: return B230400;
        case 460800: return B460800;
        case 921600: return B921600;
        default: throw std::invalid_argument("unsupported baud rate " + std::to_string(baud));
    }
}

}  // namespace

SerialConfig parse_serial_spec(std::string_view spec) {
    SerialConfig config;
    const auto at = spec.find('@');
    config.device = std::string(spec.substr(0, at));
    if (at != std::string_view::npos) {
        const auto baud = text::parse_int(spec.substr(at + 1));
        if (!baud || *baud <= 0) throw std::invalid_argument("bad baud rate in '" + std::string(spec) + "'");
        config.baud = static_cast<unsigned>(*baud);
    }
    if (config.device.empty()) throw std::invalid_argument("serial spec needs a device path");
    return config;
}

SerialPort::SerialPort(const SerialConfig& config) : device_(config.device) {
    fd_ = ::open(config.device.c_str(), O_RDWR | O_NOCTTY | O_NONBLOCK);
    if (fd_ < 0) io_error("cannot open " + config.device);

    termios tio{};
    if (::tcgetattr(fd_, &tio) != 0) {
        ::close(fd_);
        io_error("tcgetattr on " + config.device);
    }
    ::cfmakeraw(&tio);
    const speed_t speed = baud_constant(config.baud);
    ::cfsetispeed(&tio, speed);
    ::cfsetospeed(&tio, speed);

    tio.c_cflag &= ~static_cast<tcflag_t>(CSIZE | PARENB | PARODD | CSTOPB | CRTSCTS);
    tio.c_cflag |= CLOCAL | CREAD;
    switch (config.data_bits) {
        case 7: tio.c_cflag |= CS7; break;
        case 8: tio.c_cflag |= CS8; break;
        default: ::close(fd_); throw std::invalid_argument("data bits must be 7 or 8");
    }
    if (config.parity == Parity::even) tio.c_cflag |= PARENB;
    if (config.parity == Parity::odd) tio.c_cflag |= PARENB | PARODD;
    if (config.stop_bits == 2) tio.c_cflag |= CSTOPB;
    tio.c_cc[VMIN] = 0;
    tio.c_cc[VTIME] = 0;
    if (::tcsetattr(fd_, TCSANOW, &tio) != 0) {
        ::close(fd_);
        io_error("tcsetattr on " + config.device);
    }
    ::tcflush(fd_, TCIOFLUSH);
}

SerialPort::~SerialPort() {
    if (fd_ >= 0) ::close(fd_);
}

void SerialPort::write(std::string_view bytes) {
    while (!bytes.empty()) {
        const auto n = ::write(fd_, bytes.data(), bytes.size());
        if (n < 0) {
            if (errno == EAGAIN || errno == EINTR) {
                pollfd pfd{fd_, POLLOUT, 0};
                ::poll(&pfd, 1, 100);
                continue;
            }
            io_error("write to " + device_);
        }
        bytes.remove_prefix(static_cast<std::size_t>(n));
    }
}

std::optional<std::string> SerialPort::read_line(std::chrono::steady_clock::time_point deadline) {
    while (true) {
        const auto eol = pending_.find_first_of("\r\n");
        if (eol != std::string::npos) {
            std::string line = pending_.substr(0, eol);
            auto next = eol + 1;
            if (pending_[eol] == '\r' && next < pending_.size() && pending_[next] == '\n') ++next;
            pending_.erase(0, next);
            return line;
        }

        const auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) return std::nullopt;

        pollfd pfd{fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            io_error("poll on " + device_);
        }
        if (ready == 0) return std::nullopt;

        char buf[256];
        const auto n = ::read(fd_, buf, sizeof buf);
        if (n < 0) {
            if (errno == EAGAIN || errno == EINTR) continue;
            io_error("read from " + device_);
        }
        if (n == 0) {
            // pty hang-up; wait out the deadline rather than spin
            ::poll(nullptr, 0, 10);
            continue;
        }
        pending_.append(buf, static_cast<std::size_t>(n));
    }
}

AtResponse AtSession::exchange(std::string_view command) {
    channel_.write(std::string(command) + "\r");
    const auto deadline = std::chrono::steady_clock::now() + timeout_;

    AtResponse response;
    while (auto line = channel_.read_line(deadline)) {
        const auto trimmed = text::trim(*line);
        if (trimmed.empty() || trimmed == command) continue;
        if (trimmed == "OK") {
            response.status = AtStatus::ok;
            return response;
        }
        if (trimmed == "ERROR" || trimmed.starts_with("+CME ERROR") || trimmed.starts_with("+CMS ERROR")) {
            response.lines.emplace_back(trimmed);
            response.status = AtStatus::error;
            return response;
        }
        response.lines.emplace_back(trimmed);
    }
    response.status = AtStatus::timeout;
    return response;
}

SerialModemBackend::SerialModemBackend(std::unique_ptr<LineChannel> channel, std::string name,
                                       std::chrono::milliseconds timeout)
    : channel_(std::move(channel)), session_(*channel_, timeout), name_(std::move(name)) {
    if (session_.exchange("ATE0").status == AtStatus::timeout)
        throw ModemError(ModemErrc::timeout, "no answer from " + name_);
    // +CME ERROR: 504 means the GNSS session is already running
    session_.exchange("AT+QGPS=1");
}

std::unique_ptr<SerialModemBackend> SerialModemBackend::open(const SerialConfig& config) {
    return std::make_unique<SerialModemBackend>(std::make_unique<SerialPort>(config), config.device);
}

AtResponse SerialModemBackend::query_serving_cell() { return session_.exchange("AT+QENG=\"servingcell\""); }

std::string SerialModemBackend::query_gga() {
    constexpr std::string_view prefix = "+QGPSGNMEA:";
    const auto response = session_.exchange("AT+QGPSGNMEA=\"GGA\"");
    if (response.status == AtStatus::timeout) throw ModemError(ModemErrc::timeout, "GNSS query timed out on " + name_);
    if (response.status == AtStatus::error) return {};  // e.g. +CME ERROR: 516, not fixed yet
    for (const auto& line : response.lines) {
        const auto trimmed = text::trim(line);
        if (trimmed.starts_with(prefix)) return std::string(text::trim(trimmed.substr(prefix.size())));
        if (trimmed.starts_with("$")) return std::string(trimmed);
    }
    return {};
}

}  // namespace ltem::modem
