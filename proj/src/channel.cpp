#include "edgesched/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace edgesched::channel {

double path_loss_db(double distance_m, double freq_ghz) {
    if (!(distance_m >= 1.0))
        throw std::domain_error("path_loss_db: distance below 1 m reference (" +
                                std::to_string(distance_m) + ")");
    if (!(freq_ghz > 0.0))
        throw std::domain_error("path_loss_db: frequency must be positive");
    return 38.77 + 16.7 * std::log10(distance_m) + 18.2 * std::log10(freq_ghz);
}

double received_power_dbm(double tx_power_dbm, double loss_db) {
    return tx_power_dbm - loss_db;
}

double dbm_to_mw(double power_dbm) {
    return std::pow(10.0, power_dbm / 10.0);
}

double snr(double signal_mw, double bandwidth_mhz, double noise_mw_per_mhz) {
    if (!(bandwidth_mhz > 0.0))
        throw std::domain_error("snr: zero bandwidth (request has no allocation)");
    return signal_mw / (noise_mw_per_mhz * bandwidth_mhz);
}

double tx_rate_mbps(double bandwidth_mhz, double snr) {
    return bandwidth_mhz * std::log2(1.0 + snr);
}

double tx_time_s(double size_mbit, double rate_mbps) {
    if (size_mbit == 0.0)
        return 0.0;
    if (!(rate_mbps > 0.0))
        throw std::domain_error("tx_time_s: zero transmission rate, transfer infeasible");
    return size_mbit / rate_mbps;
}

double transmission_time(const WirelessParams& params, double distance_m,
                         double bandwidth_mhz, double size_mbit) {
    const double loss = path_loss_db(distance_m, params.carrier_freq_ghz);
    const double rx_mw = dbm_to_mw(received_power_dbm(params.tx_power_dbm, loss));
    const double ratio = snr(rx_mw, bandwidth_mhz, params.noise_mw_per_mhz);
    return tx_time_s(size_mbit, tx_rate_mbps(bandwidth_mhz, ratio));
}

} // namespace edgesched::channel
