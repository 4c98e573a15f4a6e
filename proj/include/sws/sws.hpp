#ifndef SWS_SWS_HPP
#define SWS_SWS_HPP

#include "sws/energy.hpp"
#include "sws/error.hpp"
#include "sws/experiment.hpp"
#include "sws/io.hpp"
#include "sws/mapper.hpp"
#include "sws/quant.hpp"
#include "sws/theory.hpp"
#include "sws/xbar.hpp"

#endif  // SWS_SWS_HPP
