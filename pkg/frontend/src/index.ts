export {
  BoundMonitor,
  MonitorError,
  createMonitor,
  savings,
  DEFAULT_CHECK_FREQ,
  DEFAULT_THRESHOLD,
} from "./boundMonitor.js";
export {
  AnyCriterion,
  InformationPlateauCriterion,
  MaxTokensCriterion,
  type StoppingCriterion,
} from "./stoppingCriterion.js";
