// Client-side mirror of the service wire types plus the local view model.
// The panel field is always the most recent server response; nothing in
// here computes physics, it only stores and counts what the server said.

export type Led = 'white' | 'green' | 'off'
export type Lid = 'open' | 'closed'
export type EventName =
  | 'prepare'
  | 'select_h'
  | 'select_s'
  | 'measure'
  | 'lid_open'
  | 'lid_close'

export interface Buttons {
  prepare: boolean
  select: boolean
  measure: boolean
  lid: boolean
}

export interface Panel {
  display_id: string
  display_text: string
  led: Led
  lid: Lid
  buttons: Buttons
}

export interface MeasurementRecord {
  observable_name: string
  outcome_label: string
  probability_of_outcome: number
  rng_draw: number
}

export interface LogEntryResult {
  kind: 'ok' | 'rejected' | 'measurement'
  reason?: string
  record?: MeasurementRecord
}

export interface LogEntry {
  seq: number
  event: string
  result: LogEntryResult
  display_after: string
}

export interface EventResponse {
  panel: Panel
  new_log_entries: LogEntry[]
}

export interface FrequencyTable {
  observable_name: string
  counts: Record<string, number>
  total: number
  frequencies: Record<string, number>
}

export interface Histogram {
  counts: Record<string, number>
  total: number
}

export interface PanelModel {
  boxId: string | null
  seed: number | null
  panel: Panel | null
  histograms: Record<string, Histogram>
  busy: boolean
  notice: string | null
}

export function emptyHistogram(): Histogram {
  return { counts: {}, total: 0 }
}

export function emptyModel(): PanelModel {
  return {
    boxId: null,
    seed: null,
    panel: null,
    histograms: { H: emptyHistogram(), S: emptyHistogram() },
    busy: false,
    notice: null,
  }
}

/** Count one server-reported outcome under its observable. */
export function accumulateOutcome(
  model: PanelModel,
  observable: string,
  outcome: string,
): void {
  const hist = model.histograms[observable] ?? emptyHistogram()
  hist.counts[outcome] = (hist.counts[outcome] ?? 0) + 1
  hist.total += 1
  model.histograms[observable] = hist
}

/** Fold the measurement entries of an event response into the histograms. */
export function accumulateEntries(model: PanelModel, entries: LogEntry[]): void {
  for (const entry of entries) {
    if (entry.result.kind === 'measurement' && entry.result.record) {
      accumulateOutcome(
        model,
        entry.result.record.observable_name,
        entry.result.record.outcome_label,
      )
    }
  }
}

/** Fold a server-side frequency table (large-n stats path). */
export function accumulateTable(model: PanelModel, table: FrequencyTable): void {
  for (const [outcome, count] of Object.entries(table.counts)) {
    const hist = model.histograms[table.observable_name] ?? emptyHistogram()
    hist.counts[outcome] = (hist.counts[outcome] ?? 0) + count
    hist.total += count
    model.histograms[table.observable_name] = hist
  }
}
