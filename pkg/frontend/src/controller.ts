// Panel behavior, DOM-free so tests can drive it like clicks would.
// One in-flight request at a time: controls lock while awaiting the
// response, mirroring the server's single-writer rule per box.

import { ApiError, CatboxClient } from './api.js'
import type { EventName, PanelModel } from './model.js'
import { accumulateEntries, accumulateTable, emptyModel } from './model.js'

const LARGE_RUN_THRESHOLD = 500

export class PanelController {
  readonly model: PanelModel = emptyModel()

  constructor(
    private readonly client: CatboxClient,
    private readonly onChange: (model: PanelModel) => void = () => {},
  ) {}

  private changed(): void {
    this.onChange(this.model)
  }

  async connect(seed?: number): Promise<void> {
    try {
      const handle = await this.client.createBox(seed)
      this.model.boxId = handle.box_id
      this.model.seed = handle.seed
      this.model.panel = await this.client.getPanel(handle.box_id)
      this.model.notice = null
    } catch (error) {
      this.model.boxId = null
      this.model.notice = this.describe(error)
    }
    this.changed()
  }

  /** One panel press; ignored while another request is in flight. */
  async press(event: EventName): Promise<void> {
    if (this.model.busy || !this.model.boxId) {
      return
    }
    this.model.busy = true
    this.model.notice = null
    this.changed()
    try {
      const response = await this.client.sendEvent(this.model.boxId, event)
      this.model.panel = response.panel
      accumulateEntries(this.model, response.new_log_entries)
    } catch (error) {
      this.model.notice = this.describe(error)
    } finally {
      this.model.busy = false
      this.changed()
    }
  }

  /** The lid toggle maps to lid_open / lid_close per the last panel state. */
  async toggleLid(): Promise<void> {
    if (!this.model.panel) {
      return
    }
    await this.press(this.model.panel.lid === 'closed' ? 'lid_open' : 'lid_close')
  }

  /**
   * n prepare -> select -> measure cycles on a dedicated box, counting the
   * server-reported outcomes. Large runs delegate to the trials endpoint.
   * n = 0 issues no requests at all.
   */
  async runStats(
    observable: 'h' | 's',
    n: number,
    options: { seed?: number } = {},
  ): Promise<void> {
    if (this.model.busy || n <= 0) {
      return
    }
    this.model.busy = true
    this.model.notice = null
    this.changed()
    try {
      if (n > LARGE_RUN_THRESHOLD) {
        const seed = options.seed ?? Math.floor(Math.random() * 2 ** 53)
        const table = await this.client.runTrials(
          { kind: 'pure', phase: 0 },
          { kind: observable },
          n,
          seed,
        )
        accumulateTable(this.model, table)
      } else {
        const handle = await this.client.createBox(options.seed)
        const select: EventName = observable === 'h' ? 'select_h' : 'select_s'
        for (let i = 0; i < n; i += 1) {
          await this.client.sendEvent(handle.box_id, 'prepare')
          await this.client.sendEvent(handle.box_id, select)
          const response = await this.client.sendEvent(handle.box_id, 'measure')
          accumulateEntries(this.model, response.new_log_entries)
        }
        await this.client.deleteBox(handle.box_id)
      }
    } catch (error) {
      this.model.notice = this.describe(error)
    } finally {
      this.model.busy = false
      this.changed()
    }
  }

  async refresh(): Promise<void> {
    if (!this.model.boxId) {
      return
    }
    try {
      this.model.panel = await this.client.getPanel(this.model.boxId)
      this.model.notice = null
    } catch (error) {
      this.model.notice = this.describe(error)
    }
    this.changed()
  }

  private describe(error: unknown): string {
    if (error instanceof ApiError) {
      return error.status === 409
        ? 'panel busy — try again'
        : `service error: ${error.message}`
    }
    return 'connection lost — is the box service running?'
  }
}
